"""
Reading programs and machine words
==================================

Programs are s-expressions. Integers stay unbounded in the tree; the
machine wraps them when it computes.
"""

from ilvm import max_int, min_int, read, render, tc_add, wrap

# read turns text into nested lists of symbols and integers
tree = read("(begin (set! rax 15) ; a comment\n (jump done))")
print(tree)
print(render(tree))

# render is canonical, so reading it back gives the same tree
assert read(render(tree)) == tree

# 64-bit words wrap around at the top of the range
print(max_int(64), "+ 1 =", tc_add(64, max_int(64), 1))

# the surface language uses 61-bit integers; a 64-bit max is -1 there
print("61-bit range:", min_int(61), "..", max_int(61))
print("max64 seen as 61 bits:", wrap(61, max_int(64)))
