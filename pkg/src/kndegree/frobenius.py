"""Frobenius certificates: a functional xi with nondegenerate form xi(xy)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import GradedAlgebra, augmentation_ideal, left_annihilator
from .errors import AnnihilatorRankError, NotFrobenius
from .linalg import Degree, GradedMap, dual_space, rank_mod_p

SEARCH_CAP = 6


@dataclass(frozen=True, eq=False)
class FrobeniusCertificate:
    """Witness that A is isomorphic to a suspension of A* as a left A-module.

    ``form[i, j] = xi(b_i b_j)``; ``isomorphism`` sends x to xi(- x), so its
    matrix is ``form`` itself.
    """

    degree: Degree
    xi: np.ndarray
    form: np.ndarray
    isomorphism: GradedMap
    nondegenerate: bool
    generator: np.ndarray
    method: str

    def summary(self) -> dict:
        return {"xi": [int(x) for x in self.xi], "nondegenerate": bool(self.nondegenerate)}


def bilinear_form(A: GradedAlgebra, xi) -> np.ndarray:
    i, j, k, c = A.products
    xi = np.asarray(xi, dtype=np.int64)
    form = np.zeros((A.rank, A.rank), dtype=np.int64)
    np.add.at(form, (i, j), c * xi[k])
    return form % A.p


def _is_nondegenerate(A, xi) -> bool:
    return rank_mod_p(bilinear_form(A, xi), A.p) == A.rank


def _search(A: GradedAlgebra, cap: int) -> Optional[np.ndarray]:
    p = A.p
    for deg, idx in sorted(A.space.strata().items()):
        if len(idx) > cap:
            continue
        for coeffs in itertools.product(range(p), repeat=len(idx)):
            nz = [c for c in coeffs if c]
            # one representative per scalar multiple
            if not nz or nz[0] != 1:
                continue
            xi = np.zeros(A.rank, dtype=np.int64)
            xi[idx] = coeffs
            if _is_nondegenerate(A, xi):
                return xi
    return None


def frobenius_certificate(A: GradedAlgebra, cap: int = SEARCH_CAP) -> FrobeniusCertificate:
    """Find xi with xi(xy) nondegenerate.

    The coordinate functional of the leading term of the annihilator
    generator is tried first, then every homogeneous functional supported in
    a degree component of rank at most ``cap``.
    """
    ann = left_annihilator(A, augmentation_ideal(A))
    xi = None
    method = "annihilator"
    if ann.rank == 1:
        pi = A.normalize(ann.basis[:, 0])
        xi = np.zeros(A.rank, dtype=np.int64)
        xi[A.leading_index(pi)] = 1
        if not _is_nondegenerate(A, xi):
            xi = None
    if xi is None:
        method = "search"
        xi = _search(A, cap)
    if xi is None:
        raise NotFrobenius(f"no homogeneous functional with nondegenerate form (component cap {cap})")
    if ann.rank != 1:
        raise AnnihilatorRankError(ann.rank)
    pi = A.normalize(ann.basis[:, 0])
    d = A.element_degree(pi)
    support_deg = int(A.space.degrees[np.flatnonzero(xi)[0]])
    if support_deg != d.value:
        raise NotFrobenius(f"form degree {support_deg} differs from primitive degree {d.value}")
    form = bilinear_form(A, xi)
    iso = GradedMap(A.space, dual_space(A.space), form, shift=-d.value)
    nondeg = rank_mod_p(form, A.p) == A.rank
    return FrobeniusCertificate(d, xi, form, iso, nondeg, pi, method)


__all__ = ["FrobeniusCertificate", "frobenius_certificate", "bilinear_form", "SEARCH_CAP"]
