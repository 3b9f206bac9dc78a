"""Sweep the Ravenel-Wilson algebras and check that every K(n)-degree vanishes.

Run: python3 demos/sweep_the_grid.py
"""

import time

from kndegree import CoefficientContext, degree_additivity_check, invariant_report, rw_algebra

print(f"{'p':>2} {'n':>2} {'q':>2} {'rank':>5} {'lift':>5} {'mod L':>6} {'eps(pi)':>8}  pi")
t0 = time.perf_counter()
for p in (2, 3, 5):
    for n in (1, 2, 3):
        ctx = CoefficientContext(p, n)
        for q in range(0, n + 2):
            E = rw_algebra(ctx, q)
            rep = invariant_report(E, s_max=2 if E.rank <= 27 else 0)
            d = rep.degree
            lift = "-" if d.lift is None else d.lift
            print(f"{p:>2} {n:>2} {q:>2} {E.rank:>5} {lift:>5} {d.value:>6} {rep.epsilon_pi:>8}  "
                  f"{E.algebra.format(rep.pi)}")
print(f"({time.perf_counter() - t0:.1f}s)")

# Degrees add under tensor products, matching products of spaces.
ctx = CoefficientContext(3, 2)
rep = degree_additivity_check(rw_algebra(ctx, 1), rw_algebra(ctx, 2))
print(f"K(2)_*K(Z/3,1) (x) K(2)_*K(Z/3,2): lifts {rep.degree_a.lift} + {rep.degree_b.lift}"
      f" = {rep.degree_product.lift}, ok={rep.ok}")
