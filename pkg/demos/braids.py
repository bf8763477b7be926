"""Framed braids: normal forms, the word problem, cabling and the cyclic action on terms."""

import random

from gvblocks.ribbon_braid import (
    FramedBraid, Gen, cable, cyclic_act, fb_equals, flatten, random_term,
)

a = FramedBraid.parse(3, "s1 s2 s1 t3")
b = FramedBraid.parse(3, "t1 s2 s1 s2")
print(a, "==", b, "?", fb_equals(a, b))
print("full twist on 3 strands:", FramedBraid.full_twist(3))
print("inverse of", a, "is", a.inverse())

# a twist on one strand, doubled, is a full twist of two ribbons
print("cable(t1, [2]) =", cable(FramedBraid.parse(1, "t1"), [2]))
print("cable(s1, [2, 1]) =", cable(FramedBraid.parse(2, "s1"), [2, 1]))

for name in ("c", "cbar_inv", "theta"):
    g = Gen(name)
    for k in range(1, 4 if name != "theta" else 3):
        f = flatten(cyclic_act(g, k))
        print(f"tau^{k}({name}): {f.source} -> {f.target}  {f.braid.word() or 'id'}")

t = random_term(random.Random(5), 3)
print("random term of arity 3, flattened:", flatten(t).braid.word())
print("  back after four rotations:", flatten(cyclic_act(t, 4)) == flatten(t))
