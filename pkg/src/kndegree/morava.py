"""Morava K-theory of Eilenberg-MacLane spaces and the invariants of their dualizing spectra.

``rw_algebra(ctx, q)`` builds H = K(n)_* K(Z/p, q) from the Ravenel-Wilson
presentation with v_n set to 1:

* q = 0: the group algebra R[Z/p];
* 0 < q < n: tensor product over I = (i_1 < ... < i_q), 0 < i_1, i_q < n, of
  truncated algebras R[a_I]/(a_I^(p^rho(I))), |a_I| = 2(p^i_1 + ... + p^i_q);
* q = n: R[a_I]/(a_I^p + (-1)^n a_I) with I = (0, 1, ..., n-1);
* q > n: R itself.

The primitive generator pi spans the left annihilator of the augmentation
ideal; its degree is the K(n)-degree and its augmentation is the value of
the framed bordism class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from .algebra import (GradedAlgebra, Generator, Presentation, augmentation_ideal,
                      cyclic_group_algebra, dual_module, from_presentation, kunneth,
                      left_annihilator, module_indecomposables, unit_algebra)
from .bar import TorTable, tor_bar
from .errors import AnnihilatorRankError, ClosedFormMismatch, KnDegreeError, PresentationError
from .frobenius import FrobeniusCertificate, frobenius_certificate
from .linalg import CoefficientContext, Degree


def check_index_sequence(I, n: int, q: int) -> tuple:
    I = tuple(int(x) for x in I)
    if len(I) != q:
        raise PresentationError(f"index sequence {I} must have length q = {q}")
    if q and not (0 < I[0] and I[-1] < n):
        raise PresentationError(f"index sequence {I} must satisfy 0 < i_1 and i_q < {n}")
    if any(a >= b for a, b in zip(I, I[1:])):
        raise PresentationError(f"index sequence {I} must be strictly increasing")
    return I


def rho(I, n: int, q: int) -> int:
    """s + 1 for the longest terminal run (i_{q-s+1}, ..., i_q) = (n-s, ..., n-1)."""
    I = check_index_sequence(I, n, q)
    s = 0
    while s < q and I[q - 1 - s] == n - 1 - s:
        s += 1
    return s + 1


def index_sequences(n: int, q: int):
    return list(itertools.combinations(range(1, n), q))


def _gen_label(I) -> str:
    return "a_(" + ",".join(str(i) for i in I) + ")"


@dataclass(eq=False)
class EMAlgebra:
    """K(n)_* K(Z/p, q) together with the data it was built from."""

    algebra: GradedAlgebra
    p: int
    n: int
    q: int
    family: str                      # "group", "truncated", "q=n", "point"
    presentation: Optional[Presentation]
    index_sequences: tuple = ()
    caveat: Optional[str] = None

    @property
    def ctx(self):
        return self.algebra.ctx

    @property
    def rank(self):
        return self.algebra.rank

    def expected_rank(self) -> int:
        if self.family == "truncated":
            return int(np.prod([g.truncation for g in self.presentation.generators]))
        return {"group": self.p, "q=n": self.p, "point": 1}[self.family]

    def metadata(self) -> dict:
        meta = {"family": self.family, "p": self.p, "n": self.n, "q": self.q, "rank": self.rank}
        if self.family == "truncated":
            meta["rank_matches_binomial"] = self.rank == self.p ** comb(self.n, self.q)
        if self.caveat:
            meta["caveat"] = self.caveat
        return meta


P2_CAVEAT = "presentation as stated for odd p, applied at p=2"


def rw_presentation(ctx: CoefficientContext, q: int) -> Presentation:
    p, n = ctx.p, ctx.n
    if q <= 0 or q > n:
        return Presentation(())
    if q < n:
        gens = []
        for I in index_sequences(n, q):
            gens.append(Generator(_gen_label(I), 2 * sum(p ** i for i in I), p ** rho(I, n, q)))
        return Presentation(tuple(gens))
    I = tuple(range(n))
    # a^p + (-1)^n v_n a = 0 with v_n -> 1
    coeff = (-1) ** (n + 1)
    return Presentation((Generator(_gen_label(I), 2 * sum(p ** i for i in I), p, ((coeff, 1),)),))


def rw_algebra(ctx: CoefficientContext, q: int, check=True) -> EMAlgebra:
    p, n = ctx.p, ctx.n
    if q < 0:
        raise PresentationError("q must be >= 0")
    caveat = P2_CAVEAT if p == 2 and 0 < q <= n else None
    name = f"K({n})_*K(Z/{p},{q})"
    if q == 0:
        A = cyclic_group_algebra(ctx, p, check=check)
        A.name = name
        return EMAlgebra(A, p, n, q, "group", None)
    if q > n:
        return EMAlgebra(unit_algebra(ctx, name=name), p, n, q, "point", Presentation(()))
    pres = rw_presentation(ctx, q)
    A = from_presentation(ctx, pres, name=name, check=check)
    if q < n:
        return EMAlgebra(A, p, n, q, "truncated", pres, tuple(index_sequences(n, q)), caveat)
    return EMAlgebra(A, p, n, q, "q=n", pres, (tuple(range(n)),), caveat)


def closed_form_pi(E: EMAlgebra) -> np.ndarray:
    """pi written down directly from the presentation, without linear algebra."""
    A = E.algebra
    p = E.p
    if E.family == "group":
        return np.ones(A.rank, dtype=np.int64)
    if E.family == "point":
        return A.unit.copy()
    if E.family == "truncated":
        top = tuple(g.truncation - 1 for g in E.presentation.generators)
        return A.basis_vector(int(np.flatnonzero(np.all(A.exponents == np.array(top), axis=1))[0]))
    # a^(p-1) + (-1)^n
    v = np.zeros(A.rank, dtype=np.int64)
    v[int(np.flatnonzero(A.exponents[:, 0] == p - 1)[0])] += 1
    v[0] += (-1) ** E.n
    return v % p


def _algebra(A):
    return A.algebra if isinstance(A, EMAlgebra) else A


def primitive_generator(A, cross_check=True) -> np.ndarray:
    """Normalized generator of the left annihilator of the augmentation ideal."""
    alg = _algebra(A)
    ann = left_annihilator(alg, augmentation_ideal(alg))
    if ann.rank != 1:
        raise AnnihilatorRankError(ann.rank)
    pi = alg.normalize(ann.basis[:, 0])
    if cross_check and isinstance(A, EMAlgebra):
        closed = alg.normalize(closed_form_pi(A))
        if not np.array_equal(pi, closed):
            raise ClosedFormMismatch(
                f"annihilator gives {alg.format(pi)}, closed form gives {alg.format(closed)}")
    return pi


def kn_degree(A, pi=None) -> Degree:
    alg = _algebra(A)
    if pi is None:
        pi = primitive_generator(A)
    return alg.element_degree(pi)


def bordism_class(A, pi=None) -> int:
    """epsilon(pi) in F_p."""
    alg = _algebra(A)
    if pi is None:
        pi = primitive_generator(A)
    return alg.epsilon(pi)


def indecomposables_degree(A) -> Degree:
    """Degree of the generator of R (x)_A A*."""
    alg = _algebra(A)
    Q = module_indecomposables(alg, dual_module(alg))
    if Q.rank != 1:
        raise AnnihilatorRankError(Q.rank)
    return Q.space.degree(0)


@dataclass
class AdditivityReport:
    ok: bool
    degree_a: Optional[Degree] = None
    degree_b: Optional[Degree] = None
    degree_product: Optional[Degree] = None
    epsilon_a: Optional[int] = None
    epsilon_b: Optional[int] = None
    epsilon_product: Optional[int] = None
    failures: list = field(default_factory=list)


def degree_additivity_check(A, B) -> AdditivityReport:
    """Compare pi and its degree for A (x) B with those of the factors.

    Failures are collected into the report rather than raised.
    """
    rep = AdditivityReport(ok=False)
    try:
        a, b = _algebra(A), _algebra(B)
        pa, pb = primitive_generator(A), primitive_generator(B)
        AB = kunneth(a, b, check=False)
        pab = primitive_generator(AB)
        rep.degree_a, rep.degree_b = a.element_degree(pa), b.element_degree(pb)
        rep.degree_product = AB.element_degree(pab)
        rep.epsilon_a, rep.epsilon_b, rep.epsilon_product = a.epsilon(pa), b.epsilon(pb), AB.epsilon(pab)
    except KnDegreeError as exc:
        rep.failures.append(f"{exc.code}: {exc}")
        return rep
    L = a.ctx.period
    if rep.degree_product.value != (rep.degree_a.value + rep.degree_b.value) % L:
        rep.failures.append("degree residue is not additive")
    if None not in (rep.degree_a.lift, rep.degree_b.lift, rep.degree_product.lift):
        if rep.degree_product.lift != rep.degree_a.lift + rep.degree_b.lift:
            rep.failures.append("degree lift is not additive")
    tensor_pi = np.kron(pa, pb) % a.p
    if not (np.array_equal(pab, tensor_pi) or np.array_equal(pab, (-tensor_pi) % a.p)):
        rep.failures.append("pi(A (x) B) != +-pi(A) (x) pi(B)")
    if rep.epsilon_product != (rep.epsilon_a * rep.epsilon_b) % a.p:
        rep.failures.append("epsilon(pi) is not multiplicative")
    rep.ok = not rep.failures
    return rep


@dataclass
class InvariantReport:
    pi: np.ndarray
    degree: Degree
    epsilon_pi: int
    frobenius: Optional[FrobeniusCertificate]
    tor: Optional[TorTable]
    indecomposables_degree: Optional[Degree] = None
    errors: dict = field(default_factory=dict)


def invariant_report(A, s_max: int = 2, tor_budget=None) -> InvariantReport:
    """The full pipeline: pi, K(n)-degree, epsilon(pi), Frobenius certificate, Tor of A*."""
    alg = _algebra(A)
    pi = primitive_generator(A)
    deg = alg.element_degree(pi)
    eps = alg.epsilon(pi)
    errors = {}
    cert = frobenius_certificate(alg)
    q_deg = indecomposables_degree(alg)
    tor = None
    if s_max > 0:
        try:
            tor = tor_bar(alg, dual_module(alg), s_max, budget=tor_budget)
        except KnDegreeError as exc:
            errors["tor"] = exc
    return InvariantReport(pi, deg, eps, cert, tor, q_deg, errors)


__all__ = [
    "rho", "check_index_sequence", "index_sequences", "EMAlgebra", "rw_presentation", "rw_algebra",
    "closed_form_pi", "primitive_generator", "kn_degree", "bordism_class", "indecomposables_degree",
    "degree_additivity_check", "AdditivityReport", "InvariantReport", "invariant_report",
]
