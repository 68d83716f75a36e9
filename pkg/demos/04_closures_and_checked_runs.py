"""
Procedures and checked runs
===========================

A procedure is a code label, an arity and an environment vector. The code
gets the procedure itself as an extra first argument, which is how it
reaches its environment.
"""

from ilvm import read, registry, run_checked, run_unchecked
from ilvm.closures import call, host_arity, make_procedure, unsafe_procedure_arity, unsafe_procedure_ref, unsafe_procedure_set
from ilvm.errors import InvalidProgram

foo = make_procedure(lambda c, x: x + unsafe_procedure_ref(c, 0), 1, 1)
unsafe_procedure_set(foo, 0, 21)
print("call(foo, foo, 21) =", call(foo, [foo, 21]))
print("arity:", unsafe_procedure_arity(foo), "host arity:", host_arity(foo))

# The surface language computes on 61-bit integers.
max64 = 2**63 - 1
max61 = 2**60 - 1
v7 = registry()["exprs-lang-v7"]
for text in [f"(+ {max64} 0)", f"(module (call + {max64} 0))", f"(module (call + {max61} 0))"]:
    print(f"{text:<45} valid: {v7.validate(read(text))}")

# without checking, the 64-bit literal is silently reinterpreted
print("unchecked:", run_unchecked("exprs-lang-v7", read(f"(+ {max64} 0)")))

# with checking, it is reported as an invalid program instead
try:
    run_checked("exprs-lang-v7", read(f"(+ {max64} 0)"))
except InvalidProgram as e:
    print("checked:", e)

print("checked:", run_checked("exprs-lang-v7", read(f"(module (call + {max61} 0))")))
print(run_checked("exprs-lang-v7", read("(module (define sq (lambda (x.1) (call * x.1 x.1))) (call sq 7))")))
