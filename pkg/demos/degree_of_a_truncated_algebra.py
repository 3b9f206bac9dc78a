"""Walk through the pipeline on K(2)_*K(Z/2, 1) = F_2[a]/(a^4), |a| = 4.

Run: python3 demos/degree_of_a_truncated_algebra.py
"""

from kndegree import (CoefficientContext, augmentation_ideal, dual_module, frobenius_certificate,
                      left_annihilator, rw_algebra, tor_bar)
from kndegree.morava import indecomposables_degree

ctx = CoefficientContext(p=2, n=2)
print(f"coefficients: F_{ctx.p}[v_{ctx.n}^+-1], degrees read mod {ctx.period}")

E = rw_algebra(ctx, q=1)
A = E.algebra
print(f"{A.name}: rank {A.rank}, basis {A.labels}")
print("degree residues:", A.space.degrees.tolist())

# The primitives are the elements killed by everything of positive augmentation.
ann = left_annihilator(A, augmentation_ideal(A))
pi = A.normalize(ann.basis[:, 0])
d = A.element_degree(pi)
print(f"annihilator has rank {ann.rank}, generated by pi = {A.format(pi)}")
print(f"K(n)-degree: lift {d.lift}, residue {d.value}")
print(f"augmentation of pi: {A.epsilon(pi)}")

cert = frobenius_certificate(A)
print("Frobenius form xi(b_i b_j):")
print(cert.form)

q = indecomposables_degree(A)
print(f"indecomposables of the dual module sit in degree {q.lift} = {q.value} mod {ctx.period}")

tor = tor_bar(A, dual_module(A), s_max=3)
for row in tor.rows:
    print(f"Tor_{row.s}: rank {row.rank}, degrees {list(row.degrees)}")
