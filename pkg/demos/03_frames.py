"""
Frame variables, abstract locations and a non-tail call
=======================================================

fvN is a stack slot relative to the frame base. Moving rbp with the
increment form also moves a hidden offset, so fv0 keeps naming the
caller's slot while the callee's frame is being filled in.
"""

from ilvm import fresh_state, interp_module, read

CALL = """
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

s = fresh_state()


def show(pc, instr, rax):
    rbp = s.regs["rbp"]
    print(f"{pc:3d}  {instr:<28} rbp={rbp} offset={s.fvar_offset:4d} rbp-offset={rbp - s.fvar_offset}")


print("result:", interp_module(read(CALL), s, trace=show))

# assignment info puts an abstract location in a physical one
print(interp_module(read("(module ((assignment ((x.1 rax)))) (begin (set! x.1 5) (jump done)))")))

# unassigned abstract locations are plain local variables
print(interp_module(read("(module ((assignment ())) (begin (set! x.1 5) (set! rax (* x.1 x.1)) (jump done)))")))
