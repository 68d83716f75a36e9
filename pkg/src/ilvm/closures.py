"""Procedure records: a code label, the user-visible arity and an environment.

The code behind a procedure receives the procedure itself as its first
argument, so the arity the code sees (the host arity) is one more than the
arity the source program declared.
"""

import inspect
import itertools

from ilvm.errors import ArityMismatch, EnvIndexOutOfBounds, NotAProcedure
from ilvm.state import VOID, Label

_ids = itertools.count()


class ProcedureRecord:
    __slots__ = ("label", "arity", "env", "id")

    def __init__(self, label, arity, env_size):
        self.label = label
        self.arity = arity
        self.env = [VOID] * env_size
        self.id = next(_ids)

    def __str__(self):
        name = self.label.name if isinstance(self.label, Label) else getattr(
            self.label, "__name__", "code")
        return f"#<procedure:{name}>"

    __repr__ = __str__


def make_procedure(label, arity, env_size):
    if env_size < 0:
        raise ValueError("env_size must be non-negative")
    return ProcedureRecord(label, arity, env_size)


def _proc(p):
    if not isinstance(p, ProcedureRecord):
        raise NotAProcedure(p)
    return p


def unsafe_procedure_label(p):
    return _proc(p).label


def unsafe_procedure_arity(p):
    return _proc(p).arity


def unsafe_procedure_env(p):
    return _proc(p).env


def unsafe_procedure_ref(p, i):
    env = _proc(p).env
    if not 0 <= i < len(env):
        raise EnvIndexOutOfBounds(i)
    return env[i]


def unsafe_procedure_set(p, i, v):
    env = _proc(p).env
    if not 0 <= i < len(env):
        raise EnvIndexOutOfBounds(i)
    env[i] = v


def host_arity(p):
    """Number of arguments the procedure's code consumes."""
    code = _proc(p).label
    explicit = getattr(code, "host_arity", None)
    if explicit is not None:
        return explicit
    if callable(code):
        return len(inspect.signature(code).parameters)
    return p.arity + 1


def call(p, args):
    """Apply ``p`` to ``args``; ``args`` already includes ``p`` in first position."""
    code = _proc(p).label
    expected = host_arity(p)
    if len(args) != expected:
        raise ArityMismatch(expected, len(args))
    if not callable(code):
        raise NotAProcedure(p)
    return code(*args)
