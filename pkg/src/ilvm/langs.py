"""Named languages, the 61-bit surface language and checked runs.

Every language pairs a grammar with an interpreter built from the shared
features in ``lang_base`` and ``lang_frames``:

=================  ===========================================  ==========
language           interpreter                                  result
=================  ===========================================  ==========
``x64-v1``         ``X64V1Interp`` (rax read at end of program)  ``int64``
``paren-x64``      ``X64Interp``                                 ``int64``
``asm-alloc-lang`` ``FrameInterp``                               ``int64``
``exprs-lang-v7``  ``V7Interp`` (``X64Interp`` arithmetic at 61)  ``int61``
=================  ===========================================  ==========

``run_checked`` validates the program against the grammar, runs it and
checks the class of the result, raising exactly one of
``InvalidProgram``, ``RuntimeFault`` or ``BadResult`` on failure.
"""

from dataclasses import dataclass
from typing import Callable

from ilvm import closures
from ilvm.errors import (
    BadForm, BadResult, DuplicateLanguageName, InvalidProgram, RuntimeFault,
    UnboundName, UndefinedLabel, UnknownLanguage,
)
from ilvm.grammar import Grammar, builtin_grammar
from ilvm.lang_base import X64Interp, X64V1Interp
from ilvm.lang_frames import FrameInterp, Kind, classify
from ilvm.machine_ints import BINOPS, wrap
from ilvm.sexpr import is_int, is_symbol, render


# -- the surface language -----------------------------------------------------

class _Primitive:
    """Code for a built-in procedure: ignores itself, applies a binop."""

    host_arity = 3

    def __init__(self, op, interp):
        self.op = op
        self.interp = interp
        self.__name__ = op

    def __call__(self, proc, a, b):
        m = self.interp
        where = f"({self.op} {a} {b})"
        return m.binop(self.op, m.as_int(a, where), m.as_int(b, where))


class _LambdaCode:
    def __init__(self, label, params, body, interp):
        self.__name__ = label
        self.params = params
        self.body = body
        self.interp = interp
        self.host_arity = len(params) + 1

    def __call__(self, proc, *args):
        return self.interp.eval_value(self.body, dict(zip(self.params, args)))


class V7Interp(X64Interp):
    """The base features with every binop rebound to 61-bit arithmetic."""

    name = "exprs-lang-v7"
    width = 61

    def __init__(self, state=None, trace=None, fuel=None):
        super().__init__(state, trace, fuel)
        self.prims = {op: closures.make_procedure(_Primitive(op, self), 2, 0) for op in BINOPS}
        self.defs = {}

    def binop(self, op, a, b):
        # out-of-range operands only reach here from unchecked programs
        return super().binop(op, wrap(self.width, a), wrap(self.width, b))

    def define(self, d):
        if not (isinstance(d, list) and len(d) == 3 and is_symbol(d[0], "define")
                and isinstance(d[1], str) and isinstance(d[2], list) and len(d[2]) == 3
                and is_symbol(d[2][0], "lambda") and isinstance(d[2][1], list)
                and all(isinstance(x, str) for x in d[2][1])):
            raise BadForm(f"expected (define label (lambda (aloc ...) value)), got {render(d)}", d)
        label, (_, params, body) = str(d[1]), d[2]
        code = _LambdaCode(label, [str(x) for x in params], body, self)
        self.defs[label] = closures.make_procedure(code, len(params), 0)

    def apply(self, f, args):
        return closures.call(f, [f, *args])

    def eval_value(self, e, env):
        if is_int(e):
            return e
        if isinstance(e, str):
            if e in env:
                return env[e]
            if e in self.prims:
                return self.prims[e]
            if classify(e) is Kind.ALOC:
                raise UnboundName(e)
            if e in self.defs:
                return self.defs[e]
            raise UndefinedLabel(e)
        if isinstance(e, list) and e:
            # (call f arg ...); the unchecked interpreter also accepts (f arg ...)
            parts = e[1:] if is_symbol(e[0], "call") else e
            if not parts:
                raise BadForm(f"call: missing operator in: {render(e)}", e)
            f = self.eval_value(parts[0], env)
            return self.apply(f, [self.eval_value(x, env) for x in parts[1:]])
        raise BadForm(f"unrecognized expression {render(e)}", e)

    def execute(self, p):
        if isinstance(p, list) and p and is_symbol(p[0], "module"):
            if len(p) < 2:
                raise BadForm("module: missing body", p)
            for d in p[1:-1]:
                self.define(d)
            return self.eval_value(p[-1], {})
        return self.eval_value(p, {})


def interp_v7(p, state=None, *, trace=None, fuel=None):
    """Unchecked interpreter for the 61-bit surface language."""
    return V7Interp(state, trace, fuel).execute(p)


# -- registry -----------------------------------------------------------------

@dataclass(frozen=True)
class LanguageDef:
    name: str
    grammar: Grammar
    interp: Callable
    result_check: str

    def validate(self, p):
        return self.grammar.matches(self.grammar.start, p)


def _runner(cls):
    def run(p, state=None, *, trace=None, fuel=None):
        return cls(state, trace, fuel).execute(p)
    run.__name__ = f"interp_{cls.name.replace('-', '_')}"
    return run


class Registry:
    def __init__(self):
        self._langs = {}

    def register(self, lang):
        if lang.name in self._langs:
            raise DuplicateLanguageName(lang.name)
        self._langs[lang.name] = lang
        return lang

    def __getitem__(self, name):
        try:
            return self._langs[name]
        except KeyError:
            raise UnknownLanguage(name) from None

    def __contains__(self, name):
        return name in self._langs

    def __iter__(self):
        return iter(self._langs)

    def names(self):
        return list(self._langs)


def register_languages():
    reg = Registry()
    for cls, result in [
        (X64V1Interp, "int64"),
        (X64Interp, "int64"),
        (FrameInterp, "int64"),
        (V7Interp, "int61"),
    ]:
        reg.register(LanguageDef(cls.name, builtin_grammar(cls.name), _runner(cls), result))
    return reg


_default = None


def registry():
    """The shared registry of built-in languages."""
    global _default
    if _default is None:
        _default = register_languages()
    return _default


def run_unchecked(lang, p, state=None, *, trace=None, fuel=None, languages=None):
    """Run without validation; any fault surfaces as ``RuntimeFault``."""
    ld = (languages or registry())[lang]
    try:
        return ld.interp(p, state, trace=trace, fuel=fuel)
    except Exception as e:  # noqa: BLE001 -- every fault is reported, never a crash
        raise RuntimeFault(ld.name, e) from e


def run_checked(lang, p, state=None, *, trace=None, fuel=None, languages=None):
    ld = (languages or registry())[lang]
    if not ld.validate(p):
        raise InvalidProgram(ld.name, ld.grammar.start, p)
    v = run_unchecked(lang, p, state, trace=trace, fuel=fuel, languages=languages)
    if not ld.grammar.is_class(ld.result_check, v):
        raise BadResult(ld.name, ld.result_check, v)
    return v
