"""
Factorial in the parenthesized x64 subset
=========================================

Labels name positions in the flattened instruction list. Control falls
through from one labelled block into the next, and jumping to ``done``
halts with the value in rax.
"""

from ilvm import MachineState, execute, fresh_state, read, resolve_labels
from ilvm.state import dump

FACT = """
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

# labelify: where did fact and end land?
table = resolve_labels(read(FACT.format(n=5)))
for name, index in table.labels.items():
    print(f"{name:>4} -> {index}: {table.code[index]}")

for n in (5, 6, 10):
    print(f"fact({n}) =", execute(read(FACT.format(n=n))))

# a trace callback sees every executed instruction
steps = []
execute(read(FACT.format(n=3)), trace=lambda pc, instr, rax: steps.append(instr))
print(len(steps), "instructions for fact(3); the last is", steps[-1])

# state can be supplied and inspected afterwards
s: MachineState = fresh_state()
execute(read(FACT.format(n=4)), s)
print(dump(s))
