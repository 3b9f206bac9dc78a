"""The invariant suite behind ``kndegree check``."""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import cyclic_group_algebra, dual_module
from .bar import tor_bar
from .errors import KnDegreeError
from .frobenius import frobenius_certificate
from .hopf import group_hopf
from .linalg import CoefficientContext
from .morava import (bordism_class, closed_form_pi, degree_additivity_check, indecomposables_degree,
                     primitive_generator, rw_algebra)

TOR_RANK_LIMIT = 64
GROUP_ORDERS = range(1, 13)
KUNNETH_RANK_LIMIT = 243


def _instances(p_set, n_range, fast):
    for p in p_set:
        for n in n_range:
            ctx = CoefficientContext(p, n)
            for q in range(0, n + 2):
                yield rw_algebra(ctx, q, check=not fast)


def check_instance(E, s_max):
    """Yield (name, ok, detail) for one Eilenberg-MacLane algebra."""
    A = E.algebra
    tag = f"K({E.n})_*K(Z/{E.p},{E.q})"
    L, p = A.ctx.period, E.p
    yield f"{tag} axioms", _try(A.check)
    if E.family == "truncated":
        yield f"{tag} rank", _expect(A.rank == E.expected_rank(), f"rank {A.rank}")
    if E.q == 1:
        yield f"{tag} rank p^n", _expect(A.rank == p ** E.n, f"rank {A.rank}")
    if E.family == "q=n":
        g = E.presentation.generators[0]
        yield f"{tag} (p-1)|a| = 0", _expect(((p - 1) * g.degree) % L == 0, f"|a| = {g.degree}")
    try:
        pi = primitive_generator(E)
    except KnDegreeError as exc:
        yield f"{tag} primitive generator", (False, f"{exc.code}: {exc}")
        return
    yield f"{tag} pi = closed form", _expect(np.array_equal(pi, A.normalize(closed_form_pi(E))), A.format(pi))
    d = A.element_degree(pi)
    yield f"{tag} degree = 0", _expect(d.value == 0, f"degree {d.value} mod {L}")
    eps = bordism_class(E, pi)
    want = {"group": 0, "truncated": 0, "q=n": (-1) ** E.n % p, "point": 1}[E.family]
    yield f"{tag} epsilon(pi)", _expect(eps == want, f"{eps} != {want}")
    try:
        cert = frobenius_certificate(A)
        yield f"{tag} frobenius", _expect(cert.nondegenerate and cert.degree.value == d.value, cert.method)
    except KnDegreeError as exc:
        yield f"{tag} frobenius", (False, f"{exc.code}: {exc}")
    qd = indecomposables_degree(A)
    yield f"{tag} duality pairing", _expect(qd.value == (-d.value) % L, f"{qd.value} vs {-d.value % L}")
    if s_max > 0 and A.rank <= TOR_RANK_LIMIT:
        tor = tor_bar(A, dual_module(A), s_max)
        ok = (tor.rows[0].rank == 1 and tor.rows[0].degrees == ((-d.value) % L,)
              and tor.vanishes_above_zero())
        yield f"{tag} Tor collapse", _expect(ok, str([r.rank for r in tor.rows]))


def _expect(ok, detail):
    return bool(ok), ("" if ok else detail)


def _try(fn):
    try:
        fn()
        return True, ""
    except KnDegreeError as exc:
        return False, f"{exc.code}: {exc}"


def run_checks(p_set=(2, 3, 5), n_range=(1, 2, 3), s_max=2, fast=False, inject_fault=False):
    """Run every invariant; return (all_ok, report lines)."""
    results = []
    instances = list(_instances(p_set, n_range, fast))
    if inject_fault:
        victim = next(E for E in instances if E.family == "truncated" and E.rank > 2)
        victim.algebra = victim.algebra.with_corrupted_constant()
    for E in instances:
        try:
            for res in check_instance(E, s_max):
                results.append(res)
        except KnDegreeError as exc:
            results.append((f"{E.algebra.name} pipeline", (False, f"{exc.code}: {exc}")))
    for p in p_set:
        ctx = CoefficientContext(p, 1)
        for m in GROUP_ORDERS:
            G = cyclic_group_algebra(ctx, m, check=not fast)
            try:
                pi = primitive_generator(G)
                results.append((f"R[Z/{m}] p={p} epsilon(N)",
                                _expect(G.epsilon(pi) == m % p and np.all(pi == 1), G.format(pi))))
            except KnDegreeError as exc:
                results.append((f"R[Z/{m}] p={p} primitive generator", (False, str(exc))))
            results.append((f"R[Z/{m}] p={p} hopf axioms", _try(lambda: group_hopf(G))))
    # Kunneth additivity over a deterministic set of pairs
    small = [E for E in instances if E.rank > 1]
    pairs = [(A, B) for A, B in itertools.combinations_with_replacement(small, 2)
             if A.ctx == B.ctx and A.rank * B.rank <= KUNNETH_RANK_LIMIT]
    for A, B in pairs[::max(1, len(pairs) // 20)][:20]:
        rep = degree_additivity_check(A, B)
        results.append((f"kunneth {A.algebra.name} (x) {B.algebra.name}", _expect(rep.ok, "; ".join(rep.failures))))
    lines = []
    ok = True
    for name, (passed, detail) in results:
        ok &= passed
        lines.append(f"PASS {name}" if passed else f"FAIL {name}: {detail}")
    lines.append(f"{sum(1 for _, (x, _) in results if x)}/{len(results)} checks passed")
    return ok, lines


__all__ = ["run_checks", "check_instance"]
