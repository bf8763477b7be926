"""
Walk through the Z/4 running example: structure scalars, the dualizing
degree, and the coherence suites, followed by a deliberately broken copy.
"""

from fractions import Fraction

from gvblocks.exact_scalars import RootOfUnity
from gvblocks.pointed_gv import (
    check_balanced_braided_axioms, check_cocycle, check_hexagon_H, check_pivotal_axioms, dual,
    from_tables, make_cyclic_category, scalar,
)

C = make_cyclic_category(4, 1, 1)
print(C.describe())
print("g0 =", C.g0, " dual(1) =", dual(C, 1))

for g in range(4):
    print(f"theta({g}) = {scalar(C, 'theta', g)!r}")
print("psi(1,1) =", repr(scalar(C, "psi", 1, 1)), "  psi(0,0) =", scalar(C, "psi", 0, 0))

for suite in (check_cocycle, check_pivotal_axioms, check_hexagon_H, check_balanced_braided_axioms):
    print(suite(C).summary())

# multiply one on-support braiding entry by a cube root of unity
tau = dict(C.tau)
tau[((2,), (0,))] = tau[((2,), (0,))] * RootOfUnity(Fraction(1, 3))
broken = from_tables(C.group, dict(C.lam), tau, C.h0, name="Z/4 broken", validate=False)
rep = check_pivotal_axioms(broken)
print(rep.summary())
for f in rep.failures[:3]:
    print("  ", f.axiom, f.witness)
