"""Cyclic group algebras: the norm element, its augmentation, and the Hopf structure.

Run: python3 demos/group_algebras_and_norms.py
"""

from kndegree import (CoefficientContext, bordism_class, cyclic_group_algebra, dual_hopf, group_hopf,
                      primitive_generator, tor_bar, trivial_module)

for p in (2, 3, 5):
    ctx = CoefficientContext(p, 1)
    row = []
    for m in range(1, 13):
        G = cyclic_group_algebra(ctx, m)
        assert primitive_generator(G).tolist() == [1] * m
        row.append(bordism_class(G))
    print(f"p={p}: augmentation of the norm for |G| = 1..12: {row}")

# Over F_3 the group Z/3 is not semisimple; Tor of the trivial module never stops.
G = cyclic_group_algebra(CoefficientContext(3, 1), 3)
tor = tor_bar(G, trivial_module(G), s_max=4)
print("Tor over F_3[Z/3] with trivial coefficients:", [r.rank for r in tor.rows])

# Dualizing the Hopf algebra of Z/2 at p=3 gives functions on Z/2: orthogonal idempotents.
H = group_hopf(cyclic_group_algebra(CoefficientContext(3, 1), 2))
D = dual_hopf(H).algebra
for i in range(2):
    for j in range(2):
        print(f"  {D.format(D.basis_vector(i))} * {D.format(D.basis_vector(j))} = {D.format(D.multiply(D.basis_vector(i), D.basis_vector(j)))}")
