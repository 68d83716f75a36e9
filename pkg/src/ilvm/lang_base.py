"""The parenthesized x64 subset and the executor every language builds on.

Programs are ``(begin effect ...)``. Nested ``begin`` forms are spliced
inline and ``(with-label l e)`` names the position of ``e`` in the
flattened instruction sequence, so a label denotes everything from that
instruction to the end (fall-through). ``jump`` never returns; a program
ends by jumping to the reserved label ``done``, which halts with the value
of ``rax``.

``X64Interp`` holds one feature per method. Later languages subclass it
and override or add features instead of re-implementing them.
"""

import operator
from dataclasses import dataclass, field

from ilvm import state as st
from ilvm.closures import ProcedureRecord
from ilvm.errors import (
    BadForm, DuplicateLabel, EmptyProgram, ExecTypeError, FellOffEnd,
    OutOfFuel, UnboundRegister, UndefinedLabel,
)
from ilvm.machine_ints import BINOPS, in_range
from ilvm.sexpr import is_int, is_symbol, render
from ilvm.state import DONE, RELOPS, Label

_ADDR_OPS = {"+": operator.add, "-": operator.sub}


# -- operands ---------------------------------------------------------------

class Operand:
    assignable = False

    def read(self, m):
        raise NotImplementedError

    def write(self, m, v):
        raise BadForm(f"cannot assign to {self}")


@dataclass(frozen=True)
class Lit(Operand):
    value: int

    def read(self, m):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class LabelRef(Operand):
    name: str

    def read(self, m):
        return Label(self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Reg(Operand):
    name: str
    assignable = True

    def read(self, m):
        return st.reg_get(m.state, self.name)

    def write(self, m, v):
        st.reg_set(m.state, self.name, v)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class StackSlot(Operand):
    """``(rbp - offset)``: the stack cell ``offset`` below the frame base."""
    offset: int
    assignable = True

    def index(self, m):
        return m.as_int(st.reg_get(m.state, "rbp"), self) - self.offset

    def read(self, m):
        return st.stack_get(m.state, self.index(m))

    def write(self, m, v):
        st.stack_set(m.state, self.index(m), v)

    def __str__(self):
        return f"(rbp - {self.offset})"


@dataclass(frozen=True)
class MemAddr(Operand):
    """``(base op offset)`` with a base other than rbp: a heap cell."""
    base: Operand
    op: str
    offset: Operand
    assignable = True

    def index(self, m):
        base = m.as_int(self.base.read(m), self)
        off = m.as_int(self.offset.read(m), self)
        return _ADDR_OPS[self.op](base, off)

    def read(self, m):
        return st.mem_get(m.state, self.index(m))

    def write(self, m, v):
        st.mem_set(m.state, self.index(m), v)

    def __str__(self):
        return f"({self.base} {self.op} {self.offset})"


@dataclass(frozen=True)
class BinopExpr(Operand):
    op: str
    left: Operand
    right: Operand

    def read(self, m):
        a = m.as_int(self.left.read(m), self)
        b = m.as_int(self.right.read(m), self)
        return m.binop(self.op, a, b)

    def __str__(self):
        return f"({self.op} {self.left} {self.right})"


# -- instructions -------------------------------------------------------------
# ``step`` returns the next instruction index, or None to fall through.

@dataclass
class Set:
    dst: Operand
    src: Operand

    def step(self, m):
        self.dst.write(m, self.src.read(m))

    def __str__(self):
        return f"(set! {self.dst} {self.src})"


@dataclass
class RbpIncrement:
    """``(set! rbp (op rbp v))``; also shifts the frame-variable offset."""
    op: str
    amount: Operand

    def step(self, m):
        s = m.state
        v = m.as_int(self.amount.read(m), self)
        s.fvar_offset = m.binop(self.op, s.fvar_offset, v)
        st.reg_set(s, "rbp", m.binop(self.op, m.as_int(st.reg_get(s, "rbp"), self), v))

    def __str__(self):
        return f"(set! rbp ({self.op} rbp {self.amount}))"


@dataclass
class Jump:
    target: Operand
    annotations: tuple = ()

    def step(self, m):
        return m.goto(self.target.read(m), self)

    def __str__(self):
        extra = "".join(f" {a}" for a in self.annotations)
        return f"(jump {self.target}{extra})"


@dataclass
class Compare:
    left: Operand
    right: Operand

    def step(self, m):
        a = m.as_int(self.left.read(m), self)
        b = m.as_int(self.right.read(m), self)
        st.flags_update(m.state, a, b)

    def __str__(self):
        return f"(compare {self.left} {self.right})"


@dataclass
class JumpIf:
    relop: str
    label: str

    def step(self, m):
        if m.state.flags[self.relop]:
            return m.goto(Label(self.label), self)
        return None

    def __str__(self):
        return f"(jump-if {self.relop} {self.label})"


@dataclass
class BlockTable:
    code: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    entry: int = 0


# -- interpreter ------------------------------------------------------------

class X64Interp:
    """Executor for the parenthesized x64 subset."""

    name = "paren-x64"
    width = 64

    def __init__(self, state=None, trace=None, fuel=None):
        self.state = st.fresh_state() if state is None else state
        self.trace = trace
        self.fuel = fuel
        self.table = None

    # arithmetic

    def binop(self, op, a, b):
        return BINOPS[op](self.width, a, b)

    def as_int(self, v, where):
        if not is_int(v):
            raise ExecTypeError(where, v)
        return v

    # operands

    def parse_symbol(self, sym):
        if sym in st.REGISTER_SET:
            return Reg(sym)
        return LabelRef(sym)

    def parse_literal(self, n):
        if not in_range(64, n):
            raise BadForm(f"integer literal {n} does not fit in a machine word", n)
        return Lit(n)

    def parse_operand(self, e):
        if is_int(e):
            return self.parse_literal(e)
        if isinstance(e, str):
            return self.parse_symbol(e)
        if isinstance(e, list) and len(e) == 3:
            head, mid, last = e
            if isinstance(head, str) and head in BINOPS:
                return BinopExpr(head, self.parse_operand(mid), self.parse_operand(last))
            if is_symbol(head, "rbp"):
                return self.parse_stack_addr(e)
            if isinstance(head, str) and isinstance(mid, str) and mid in _ADDR_OPS:
                return MemAddr(self.parse_operand(head), str(mid), self.parse_operand(last))
        raise BadForm(f"unrecognized operand {render(e)}", e)

    def parse_stack_addr(self, e):
        _, op, off = e
        if not is_symbol(op, "-"):
            raise BadForm(f"rbp: expected the literal symbol `-' at: {render(op)} in: {render(e)}", e)
        if not is_int(off):
            raise BadForm(f"rbp: expected integer at: {render(off)} in: {render(e)}", e)
        if off < 0:
            raise BadForm(f"rbp: expected a non-negative offset in: {render(e)}", e)
        return StackSlot(off)

    def parse_location(self, e):
        loc = self.parse_operand(e)
        if not loc.assignable:
            raise BadForm(f"cannot assign to {render(e)}", e)
        return loc

    # instructions

    def parse_instr(self, e):
        head = e[0] if isinstance(e, list) and e and isinstance(e[0], str) else None
        method = self.instr_parsers().get(head)
        if method is None:
            raise BadForm(f"unrecognized instruction {render(e)}", e)
        return method(e)

    def instr_parsers(self):
        return {
            "set!": self.parse_set,
            "jump": self.parse_jump,
            "compare": self.parse_compare,
            "jump-if": self.parse_jump_if,
        }

    def parse_set(self, e):
        if len(e) != 3:
            raise BadForm(f"set!: bad syntax in: {render(e)}", e)
        _, dst, src = e
        if (is_symbol(dst, "rbp") and isinstance(src, list) and len(src) == 3
                and isinstance(src[0], str) and src[0] in BINOPS and is_symbol(src[1], "rbp")):
            return RbpIncrement(str(src[0]), self.parse_operand(src[2]))
        return Set(self.parse_location(dst), self.parse_operand(src))

    def parse_jump(self, e):
        if len(e) != 2:
            raise BadForm(f"jump: bad syntax in: {render(e)}", e)
        return Jump(self.parse_target(e[1]))

    def parse_target(self, trg):
        if not isinstance(trg, str):
            raise BadForm(f"jump: expected a label or register, got {render(trg)}", trg)
        return self.parse_symbol(trg)

    def parse_compare(self, e):
        if len(e) != 3:
            raise BadForm(f"compare: bad syntax in: {render(e)}", e)
        return Compare(self.parse_operand(e[1]), self.parse_operand(e[2]))

    def parse_jump_if(self, e):
        if len(e) != 3 or not isinstance(e[1], str) or e[1] not in RELOPS:
            raise BadForm(f"jump-if: bad syntax in: {render(e)}", e)
        if not isinstance(e[2], str) or not isinstance(self.parse_symbol(e[2]), LabelRef):
            raise BadForm(f"jump-if: expected a label in: {render(e)}", e)
        return JumpIf(str(e[1]), str(e[2]))

    # labels

    def define_label(self, table, name, index):
        if name == DONE.name or name in table.labels:
            raise DuplicateLabel(name)
        table.labels[name] = index

    def emit(self, e, table):
        """Append ``e`` to ``table``: splice begins, register with-labels."""
        head = e[0] if isinstance(e, list) and e else None
        if is_symbol(head, "begin"):
            for sub in e[1:]:
                self.emit(sub, table)
        elif is_symbol(head, "with-label"):
            if len(e) != 3 or not isinstance(e[1], str) \
                    or not isinstance(self.parse_symbol(e[1]), LabelRef):
                raise BadForm(f"with-label: bad syntax in: {render(e)}", e)
            self.define_label(table, str(e[1]), len(table.code))
            self.emit(e[2], table)
        else:
            table.code.append(self.parse_instr(e))

    def resolve_labels(self, program):
        if not (isinstance(program, list) and program and is_symbol(program[0], "begin")):
            raise BadForm(f"expected (begin effect ...), got {render(program)}", program)
        table = BlockTable()
        self.emit(program, table)
        if not table.code:
            raise EmptyProgram("program has no instructions")
        return table

    # control

    def goto(self, target, where):
        """Index to continue at after a jump to ``target``."""
        if isinstance(target, ProcedureRecord) and isinstance(target.label, Label):
            target = target.label
        if not isinstance(target, Label):
            raise ExecTypeError(where, target, "a label or procedure")
        if target == DONE:
            st.halt(self.state, st.reg_get(self.state, "rax"))
            return 0  # ignored: the run loop stops on halt
        try:
            return self.table.labels[target.name]
        except KeyError:
            raise UndefinedLabel(target.name) from None

    def fell_off_end(self):
        raise FellOffEnd("control ran past the last instruction without jumping to done")

    def run(self, table):
        s = self.state
        self.table = table
        code = table.code
        pc = table.entry
        steps = 0
        while s.halted is None:
            if pc >= len(code):
                return self.fell_off_end()
            instr = code[pc]
            nxt = instr.step(self)
            if self.trace is not None:
                self.trace(pc, str(instr), st.reg_get(s, "rax"))
            pc = pc + 1 if nxt is None else nxt
            steps += 1
            if self.fuel is not None and steps >= self.fuel and s.halted is None:
                raise OutOfFuel(f"no halt after {steps} instructions")
        return s.halted

    def execute(self, program):
        return self.run(self.resolve_labels(program))


class X64V1Interp(X64Interp):
    """The introductory register-only subset: the result is rax at the end."""

    name = "x64-v1"

    def fell_off_end(self):
        st.halt(self.state, st.reg_get(self.state, "rax"))
        return self.state.halted


def resolve_labels(program):
    return X64Interp().resolve_labels(program)


def execute(program, state=None, *, trace=None, fuel=None):
    """Run a ``(begin ...)`` program to its halt value."""
    return X64Interp(state, trace, fuel).execute(program)


# -- reference interpreter ----------------------------------------------------

_EXACT = {"+": operator.add, "-": operator.sub, "*": operator.mul}


def oracle_interp_v1(program):
    """Environment-passing fold over a straight-line register program.

    Deliberately independent of ``X64Interp``: unbounded integers, an
    immutable environment, no machine state.
    """
    def opand(x, env):
        if is_int(x):
            return x
        if x not in env:
            raise UnboundRegister(x)
        return env[x]

    match program:
        case ["begin", *effects]:
            pass
        case _:
            raise BadForm(f"expected (begin effect ...), got {render(program)}", program)

    env = {}
    for effect in effects:
        match effect:
            case ["set!", reg, [op, reg2, arg]] if reg2 == reg and op in _EXACT:
                env = {**env, reg: _EXACT[op](opand(reg, env), opand(arg, env))}
            case ["set!", reg, arg] if not isinstance(arg, list):
                env = {**env, reg: opand(arg, env)}
            case _:
                raise BadForm(f"unrecognized effect {render(effect)}", effect)
    return opand("rax", env)
