"""Block spaces for the Z/4 example: dimensions, twist spectra, braidings and excision."""

from gvblocks.blocks import (
    block_space, boundary_braiding, dimension_oracle, excision_check, handle_twist, rbr_action,
)
from gvblocks.pointed_gv import make_cyclic_category

C = make_cyclic_category(4, 1, 1)

for g in range(4):
    V = block_space(C, g, [])
    print(f"{V!r}   oracle {dimension_oracle(C, g, [])}")

T = handle_twist(C, block_space(C, 1, []), 1)
print("torus twist eigenvalues:", T.diagonal_values())

V = block_space(C, 0, [1, 1])
print("braiding on V(1,1):", boundary_braiding(C, V, 1).entry(0, 0))
print("s1 s1 t1 t2 is the identity:", rbr_action(C, V, "s1 s1 t1 t2").is_identity())

V = block_space(C, 1, [0, 1, 3])
op = rbr_action(C, V, "s1 s2 t1")
print(op.source, "->", op.target)

print(excision_check(C, 1, 2, [1, 3]).summary())
