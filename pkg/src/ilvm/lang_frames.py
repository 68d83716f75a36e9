"""Frame variables, abstract locations and modules on top of the x64 executor.

Programs have the shape::

    (module info (define label info tail) ... tail)
    info ::= ((assignment ((aloc rloc) ...)))

An abstract location (``x.1``) named in the assignment info is rewritten to
its physical location when the program is parsed. Any other abstract
location is a variable local to its ``module`` or ``define`` body.

Frame variable ``fvN`` is the word ``8 * N`` below the frame base. Its
stack index is recomputed on every access from rbp and the machine's
``fvar_offset``, which the ``(set! rbp (op rbp n))`` form keeps in step
with rbp, so frame variables keep naming the caller's frame while a
callee frame is being set up.

``(return-point l tail)`` runs ``tail`` and binds ``l`` to the instruction
following the form; control only gets there through a later ``jump l``.
"""

import enum
import re
from dataclasses import dataclass, field

from ilvm import state as st
from ilvm.errors import (
    BadForm, DuplicateDefineLabel, ExecTypeError, FvarIndexTooLarge,
    StackIndexOutOfBounds, UnassignedAlocRead,
)
from ilvm.lang_base import BlockTable, Jump, LabelRef, Operand, Reg, X64Interp
from ilvm.sexpr import is_int, is_symbol, render
from ilvm.state import FVAR_COUNT, REGISTER_SET

_FVAR_RE = re.compile(r"fv([0-9]+)\Z")
_ALOC_RE = re.compile(r"[^.\s()]+\.[0-9]+\Z")


class Kind(enum.Enum):
    REGISTER = "register"
    FVAR = "fvar"
    ALOC = "aloc"
    LABEL = "label"


def classify(sym):
    if sym in REGISTER_SET:
        return Kind.REGISTER
    m = _FVAR_RE.match(sym)
    if m:
        if int(m.group(1)) >= FVAR_COUNT:
            raise FvarIndexTooLarge(sym)
        return Kind.FVAR
    if _ALOC_RE.match(sym):
        return Kind.ALOC
    return Kind.LABEL


def fvar_number(sym):
    return int(_FVAR_RE.match(sym).group(1))


def fvar_index(s, fv):
    """Stack index of frame variable ``fv`` (an ``Fvar`` or its number)."""
    n = fv.index if isinstance(fv, Fvar) else fv
    rbp = st.reg_get(s, "rbp")
    if not is_int(rbp):
        raise ExecTypeError(f"fv{n}", rbp)
    idx = rbp - (s.fvar_offset + 8 * n)
    if not 0 <= idx < len(s.stack):
        raise StackIndexOutOfBounds(idx)
    return idx


def collect_alocs(body):
    """Abstract locations written by some ``set!`` anywhere in ``body``."""
    found = set()

    def walk(e):
        if not isinstance(e, list) or not e:
            return
        if is_symbol(e[0], "set!"):
            if len(e) == 3 and isinstance(e[1], str) and classify(e[1]) is Kind.ALOC:
                found.add(str(e[1]))
            return
        for sub in e:
            walk(sub)

    walk(body)
    return found


# -- locations ----------------------------------------------------------------

@dataclass(frozen=True)
class Fvar(Operand):
    index: int
    assignable = True

    def read(self, m):
        return st.stack_get(m.state, fvar_index(m.state, self))

    def write(self, m, v):
        st.stack_set(m.state, fvar_index(m.state, self), v)

    def __str__(self):
        return f"fv{self.index}"


@dataclass
class Frame:
    """Cells for the unassigned abstract locations of one scope."""
    bound: set
    cells: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class AlocCell(Operand):
    name: str
    frame: Frame
    assignable = True

    def read(self, m):
        try:
            return self.frame.cells[self.name]
        except KeyError:
            raise UnassignedAlocRead(self.name) from None

    def write(self, m, v):
        self.frame.cells[self.name] = v

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Alias(Operand):
    """An abstract location redirected to its assigned physical location."""
    name: str
    target: Operand
    assignable = True

    def read(self, m):
        return self.target.read(m)

    def write(self, m, v):
        self.target.write(m, v)

    def __str__(self):
        return f"{self.name}@{self.target}"


@dataclass
class Scope:
    assignment: dict
    frame: Frame


# -- interpreter ------------------------------------------------------------

class FrameInterp(X64Interp):
    name = "asm-alloc-lang"

    def __init__(self, state=None, trace=None, fuel=None):
        super().__init__(state, trace, fuel)
        self.scope = Scope({}, Frame(set()))

    def parse_symbol(self, sym):
        kind = classify(sym)
        if kind is Kind.REGISTER:
            return Reg(sym)
        if kind is Kind.FVAR:
            return Fvar(fvar_number(sym))
        if kind is Kind.ALOC:
            target = self.scope.assignment.get(sym)
            if target is not None:
                return Alias(str(sym), target)
            return AlocCell(str(sym), self.scope.frame)
        return LabelRef(sym)

    def parse_jump(self, e):
        if len(e) < 2:
            raise BadForm(f"jump: bad syntax in: {render(e)}", e)
        # trailing locations are liveness annotations with no run-time effect
        notes = tuple(str(self.parse_location(x)) for x in e[2:])
        return Jump(self.parse_target(e[1]), notes)

    def emit(self, e, table):
        if isinstance(e, list) and e and is_symbol(e[0], "return-point"):
            if len(e) != 3 or not isinstance(e[1], str) \
                    or not isinstance(self.parse_symbol(e[1]), LabelRef):
                raise BadForm(f"return-point: bad syntax in: {render(e)}", e)
            self.emit(e[2], table)
            self.define_label(table, str(e[1]), len(table.code))
        else:
            super().emit(e, table)

    def parse_info(self, info):
        if not isinstance(info, list):
            raise BadForm(f"expected info, got {render(info)}", info)
        assignment = {}
        for entry in info:
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], str)):
                raise BadForm(f"bad info entry {render(entry)}", entry)
            if entry[0] != "assignment":
                continue
            if not isinstance(entry[1], list):
                raise BadForm(f"bad assignment {render(entry[1])}", entry)
            for pair in entry[1]:
                if not (isinstance(pair, list) and len(pair) == 2
                        and all(isinstance(x, str) for x in pair)
                        and classify(pair[0]) is Kind.ALOC
                        and classify(pair[1]) in (Kind.REGISTER, Kind.FVAR)):
                    raise BadForm(f"bad assignment pair {render(pair)}", pair)
                if pair[0] in assignment:
                    raise BadForm(f"abstract location {pair[0]} assigned twice", pair)
                assignment[str(pair[0])] = self.parse_symbol(pair[1])
        return assignment

    def emit_scope(self, body, assignment, table):
        bound = collect_alocs(body) - assignment.keys()
        self.scope = Scope(assignment, Frame(bound))
        self.emit(body, table)

    def parse_module(self, p):
        if not (isinstance(p, list) and len(p) >= 3 and is_symbol(p[0], "module")):
            raise BadForm(f"expected (module info def ... tail), got {render(p)}", p)
        module_assignment = self.parse_info(p[1])
        *defs, tail = p[2:]
        table = BlockTable()
        self.emit_scope(tail, module_assignment, table)
        seen = set()
        for d in defs:
            if not (isinstance(d, list) and len(d) == 4 and is_symbol(d[0], "define")
                    and isinstance(d[1], str)):
                raise BadForm(f"expected (define label info tail), got {render(d)}", d)
            label = str(d[1])
            if label in seen:
                raise DuplicateDefineLabel(label)
            seen.add(label)
            # module-level assignments stay visible inside each define
            assignment = {**module_assignment, **self.parse_info(d[2])}
            self.define_label(table, label, len(table.code))
            self.emit_scope(d[3], assignment, table)
        return table

    def resolve_labels(self, program):
        if isinstance(program, list) and program and is_symbol(program[0], "module"):
            return self.parse_module(program)
        self.scope = Scope({}, Frame(collect_alocs(program)))
        return super().resolve_labels(program)


def interp_module(p, state=None, *, trace=None, fuel=None):
    """Run a ``(module ...)`` program (or a bare ``(begin ...)``) to its halt value."""
    return FrameInterp(state, trace, fuel).execute(p)
