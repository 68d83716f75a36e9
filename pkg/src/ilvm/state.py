"""The machine model every language runs against.

A machine word (``MValue``) is one of:

* a Python ``int`` in the signed 64-bit range,
* a ``Label``,
* a ``ProcedureRecord`` (see ``ilvm.closures``),
* one of the singletons ``VOID``, ``UNINIT`` and ``UNALLOCED``.
"""

import operator
from dataclasses import dataclass

from ilvm.errors import DoubleHalt, MemIndexOutOfBounds, StackIndexOutOfBounds

REGISTERS = (
    "rsp", "rbp", "rax", "rbx", "rcx", "rdx", "rsi", "rdi",
    "r8", "r9", "r10", "r11", "r12", "r13", "r14", "r15",
)
REGISTER_SET = frozenset(REGISTERS)

FVAR_COUNT = 1620
STACK_SIZE = 8 * FVAR_COUNT
MEMORY_SIZE = 10000

RELOPS = {
    "!=": operator.ne,
    "=": operator.eq,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


@dataclass(frozen=True)
class Label:
    name: str

    def __str__(self):
        return self.name


class _Special:
    __slots__ = ("text",)

    def __init__(self, text):
        self.text = text

    def __repr__(self):
        return self.text

    __str__ = __repr__


VOID = _Special("#<void>")
UNINIT = _Special("uninit")
UNALLOCED = _Special("unalloced")

DONE = Label("done")


def format_value(v):
    """Render a machine value the way results are printed."""
    return str(v)


@dataclass
class MachineState:
    regs: dict
    stack: list
    memory: list
    flags: dict
    fvar_offset: int = 0
    halted: object = None  # None while running, else the halt value


def fresh_state():
    regs = {r: VOID for r in REGISTERS}
    regs["rbp"] = STACK_SIZE - 1
    regs["r12"] = 0
    regs["r15"] = DONE
    return MachineState(
        regs=regs,
        stack=[UNINIT] * STACK_SIZE,
        memory=[UNALLOCED] * MEMORY_SIZE,
        flags={k: False for k in RELOPS},
    )


def reg_get(s, r):
    return s.regs[r]


def reg_set(s, r, v):
    # Plain register write; only the rbp increment form touches fvar_offset.
    s.regs[r] = v


def stack_get(s, idx):
    if not 0 <= idx < len(s.stack):
        raise StackIndexOutOfBounds(idx)
    return s.stack[idx]


def stack_set(s, idx, v):
    if not 0 <= idx < len(s.stack):
        raise StackIndexOutOfBounds(idx)
    s.stack[idx] = v


def mem_get(s, idx):
    if not 0 <= idx < len(s.memory):
        raise MemIndexOutOfBounds(idx)
    return s.memory[idx]


def mem_set(s, idx, v):
    if not 0 <= idx < len(s.memory):
        raise MemIndexOutOfBounds(idx)
    s.memory[idx] = v


def flags_update(s, v1, v2):
    for name, cmp in RELOPS.items():
        s.flags[name] = cmp(v1, v2)


def halt(s, v):
    if s.halted is not None:
        raise DoubleHalt("machine already halted")
    s.halted = v


def dump(s):
    """Debug dump: non-void registers, then non-default stack and memory cells."""
    lines = [f"{r}={format_value(v)}" for r, v in s.regs.items() if v is not VOID]
    lines += [f"stack[{i}]={format_value(v)}" for i, v in enumerate(s.stack) if v is not UNINIT]
    lines += [f"memory[{i}]={format_value(v)}" for i, v in enumerate(s.memory) if v is not UNALLOCED]
    return "\n".join(lines)
