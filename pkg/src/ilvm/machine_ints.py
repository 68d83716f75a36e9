"""Fixed-width two's-complement arithmetic.

Everything is computed exactly on Python ints and then wrapped, so one
kernel serves every width.
"""

from ilvm.errors import OutOfRangeOperand


def max_int(bits):
    return (1 << (bits - 1)) - 1


def min_int(bits):
    return -(1 << (bits - 1))


def wrap(bits, n):
    """Reduce ``n`` into the signed ``bits``-wide range."""
    half = 1 << (bits - 1)
    return ((n + half) % (1 << bits)) - half


def in_range(bits, n):
    return min_int(bits) <= n <= max_int(bits)


def _check(bits, a, b):
    for x in (a, b):
        if not in_range(bits, x):
            raise OutOfRangeOperand(f"{x} does not fit in {bits} bits")


def tc_add(bits, a, b):
    _check(bits, a, b)
    return wrap(bits, a + b)


def tc_sub(bits, a, b):
    _check(bits, a, b)
    return wrap(bits, a - b)


def tc_mul(bits, a, b):
    _check(bits, a, b)
    return wrap(bits, a * b)


# binop symbol -> kernel
BINOPS = {"+": tc_add, "-": tc_sub, "*": tc_mul}
