"""Programs and random generators shared by the test modules."""

import random

from ilvm.sexpr import Symbol, read

FACT_TEMPLATE = """
(begin
  (set! r15 {n})
  (set! r14 1)
  (with-label fact
    (compare r15 0))
  (jump-if = end)
  (set! r14 (* r14 r15))
  (set! r15 (+ r15 -1))
  (jump fact)
  (with-label end
    (set! rax r14))
  (jump done))
"""


def fact_program(n):
    return read(FACT_TEMPLATE.format(n=n))


# A non-tail call: the caller sets up a callee frame, calls identity on
# fv0 through the callee's fv2 slot, then adds its own fv1 to the result.
NON_TAIL_CALL = """
(module ((assignment ()))
  (define identity ((assignment ()))
    (begin (set! rax fv0) (jump r15)))
  (begin
    (set! fv0 41)
    (set! fv1 1)
    (set! rbp (- rbp 16))
    (return-point l
      (begin
        (set! r15 l)
        (set! fv2 fv0)
        (jump identity)))
    (set! rbp (+ rbp 16))
    (set! r10 fv1)
    (set! rax (+ rax r10))
    (jump done)))
"""

MAX64 = 2**63 - 1
MAX61 = 2**60 - 1


# -- s-expression trees -------------------------------------------------------

_SYMBOL_CHARS = "abcdefghijklmnopqrstuvwxyzABCXYZ!?*<>=/+-_.:%&^~0123456789"


def random_symbol(rng):
    while True:
        text = "".join(rng.choice(_SYMBOL_CHARS) for _ in range(rng.randint(1, 8)))
        try:
            return Symbol(text)
        except ValueError:
            continue


def random_tree(rng, depth=4):
    r = rng.random()
    if depth == 0 or r < 0.35:
        if rng.random() < 0.5:
            return rng.choice([rng.randint(-100, 100), rng.randint(-2**70, 2**70)])
        return random_symbol(rng)
    return [random_tree(rng, depth - 1) for _ in range(rng.randint(0, 5))]


# -- straight-line register programs -------------------------------------------

ORACLE_REGS = ["rax", "rbx", "rcx", "rdx", "rsi", "rdi", "r8", "r9", "r10", "r11", "r13", "r14"]
_BOUND = 2**40


def straight_line_program(rng, length=None):
    """A random introductory-subset program with no intermediate overflow.

    Every register is written before it is read and the last effect sets
    rax. Values are tracked so that all intermediates stay below 2**40.
    """
    length = length or rng.randint(1, 12)
    env = {}
    effects = []

    def small():
        return rng.randint(-1000, 1000)

    for i in range(length):
        last = i == length - 1
        dst = "rax" if last else rng.choice(ORACLE_REGS)
        choice = rng.random()
        if dst in env and choice < 0.6:
            op = rng.choice("+-*")
            if env and rng.random() < 0.5:
                src = rng.choice(sorted(env))
                arg, val = Symbol(src), env[src]
            else:
                arg = val = small()
            exact = {"+": env[dst] + val, "-": env[dst] - val, "*": env[dst] * val}[op]
            if abs(exact) >= _BOUND:
                op, arg, exact = "+", 1, env[dst] + 1
            effects.append([Symbol("set!"), Symbol(dst), [Symbol(op), Symbol(dst), arg]])
            env[dst] = exact
        elif env and choice < 0.8:
            src = rng.choice(sorted(env))
            effects.append([Symbol("set!"), Symbol(dst), Symbol(src)])
            env[dst] = env[src]
        else:
            v = small() if rng.random() < 0.8 else rng.randint(-2**31, 2**31 - 1)
            effects.append([Symbol("set!"), Symbol(dst), v])
            env[dst] = v
    return [Symbol("begin"), *effects], env["rax"]


def with_done(program):
    return [*program, [Symbol("jump"), Symbol("done")]]


# -- frame programs with abstract locations --------------------------------------

PHYSICAL = ["rbx", "rcx", "rdx", "rsi", "rdi", "r8", "r9", "r10", "r11", "r13", "r14"] + [
    f"fv{i}" for i in range(12)
]


def frame_program(rng):
    """A random asm-alloc-lang body over abstract locations.

    Returns ``(effects, alocs)`` where ``effects`` is the list of effects
    (ending with a write to rax) and ``alocs`` the locations used.
    """
    names = [f"{rng.choice(['x', 'y', 'tmp'])}.{i}" for i in range(rng.randint(1, 6))]
    live = []
    effects = []
    for _ in range(rng.randint(1, 10)):
        dst = rng.choice(names)
        r = rng.random()
        if dst in live and r < 0.5:
            arg = rng.choice(live) if rng.random() < 0.5 else rng.randint(-50, 50)
            effects.append(["set!", dst, [rng.choice("+-*"), dst, arg]])
        elif live and r < 0.7:
            effects.append(["set!", dst, rng.choice(live)])
        else:
            effects.append(["set!", dst, rng.randint(-1000, 1000)])
        if dst not in live:
            live.append(dst)
        if rng.random() < 0.2 and len(effects) >= 2:
            # group the last two effects in a nested begin
            effects[-2:] = [["begin", *effects[-2:]]]
    effects.append(["set!", "rax", rng.choice(live)])
    return _symbolize(effects), names


def as_module(effects, assignment=()):
    info = [[Symbol("assignment"), [[Symbol(a), Symbol(l)] for a, l in assignment]]]
    return [Symbol("module"), info,
            [Symbol("begin"), *effects, [Symbol("jump"), Symbol("done")]]]


def substitute(e, mapping):
    if isinstance(e, list):
        return [substitute(x, mapping) for x in e]
    if isinstance(e, str) and e in mapping:
        return Symbol(mapping[e])
    return e


def _symbolize(e):
    if isinstance(e, list):
        return [_symbolize(x) for x in e]
    if isinstance(e, str):
        return Symbol(e)
    return e


def wrap_with_label(effects, rng, label="fresh_label"):
    """Wrap one randomly chosen top-level effect in an unused label."""
    i = rng.randrange(len(effects))
    out = list(effects)
    out[i] = [Symbol("with-label"), Symbol(label), out[i]]
    return out


def seeded(seed):
    return random.Random(seed)
