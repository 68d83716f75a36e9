"""Interpreters for a family of compiler intermediate languages.

The languages range from a parenthesized x64 subset up to a small
expression language over 61-bit integers. All of them run against one
shared machine model; each language is a set of interpreter features
plus a grammar used to validate input programs.
"""

from ilvm.sexpr import Symbol, read, read_all, render
from ilvm.machine_ints import max_int, min_int, wrap, tc_add, tc_sub, tc_mul
from ilvm.state import MachineState, fresh_state, Label, VOID, UNINIT, UNALLOCED
from ilvm.lang_base import execute, resolve_labels, oracle_interp_v1
from ilvm.lang_frames import interp_module
from ilvm.langs import interp_v7, run_checked, run_unchecked, registry

__version__ = "0.1.0"

__all__ = [
    "Symbol", "read", "read_all", "render",
    "max_int", "min_int", "wrap", "tc_add", "tc_sub", "tc_mul",
    "MachineState", "fresh_state", "Label", "VOID", "UNINIT", "UNALLOCED",
    "execute", "resolve_labels", "oracle_interp_v1", "interp_module",
    "interp_v7", "run_checked", "run_unchecked", "registry",
]
