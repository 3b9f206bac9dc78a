"""Hopf structure on finite graded algebras and its dual.

Coproducts are r^2 x r matrices whose column k is psi(b_k) written in the
pair basis of A (x) A (A-major), antipodes are r x r matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .algebra import GradedAlgebra, kunneth
from .errors import AxiomError, MissingAugmentation
from .linalg import dual_space


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    algebra: GradedAlgebra
    coproduct: np.ndarray
    antipode: np.ndarray

    @property
    def rank(self):
        return self.algebra.rank

    @property
    def counit(self):
        return self.algebra.augmentation

    def is_cocommutative(self) -> bool:
        A = self.algebra
        r = A.rank
        par = A.space.degrees % 2
        sign = (1 - 2 * np.outer(par, par)).reshape(-1)
        swap = np.arange(r * r).reshape(r, r).T.reshape(-1)
        twisted = (self.coproduct[swap, :] * sign[:, None]) % A.p
        return bool(np.array_equal(twisted, self.coproduct % A.p))


def _first_bad_column(diff, labels):
    cols = np.flatnonzero(np.any(np.asarray(diff) != 0, axis=0))
    return labels[int(cols[0])] if cols.size else None


def check_hopf(A: GradedAlgebra, psi, chi):
    """Raise AxiomError naming the first Hopf axiom that fails and where."""
    if A.augmentation is None:
        raise MissingAugmentation("a Hopf algebra needs a counit")
    r, p, L = A.rank, A.p, A.ctx.period
    lab = A.labels
    psi = np.asarray(psi, dtype=np.int64).reshape(r * r, r) % p
    chi = np.asarray(chi, dtype=np.int64).reshape(r, r) % p
    degs = A.space.degrees
    pair_deg = (degs[:, None] + degs[None, :]).reshape(-1)
    bad = (psi != 0) & ((pair_deg[:, None] - degs[None, :]) % L != 0)
    if bad.any():
        raise AxiomError("coproduct has degree 0", lab[int(np.argwhere(bad)[0][1])])
    bad = (chi != 0) & ((degs[:, None] - degs[None, :]) % L != 0)
    if bad.any():
        raise AxiomError("antipode has degree 0", lab[int(np.argwhere(bad)[0][1])])

    eye = np.eye(r, dtype=np.int64)
    eps = A.augmentation
    P = sp.csr_matrix(psi)
    I = sp.identity(r, dtype=np.int64, format="csr")
    lhs = (sp.kron(P, I) @ P).toarray() % p
    rhs = (sp.kron(I, P) @ P).toarray() % p
    where = _first_bad_column(lhs - rhs, lab)
    if where is not None:
        raise AxiomError("coassociativity", where)
    left = (np.kron(eps[None, :], eye) @ psi) % p
    where = _first_bad_column(left - eye, lab)
    if where is not None:
        raise AxiomError("left counitality", where)
    right = (np.kron(eye, eps[None, :]) @ psi) % p
    where = _first_bad_column(right - eye, lab)
    if where is not None:
        raise AxiomError("right counitality", where)

    mu = A.mult_matrix
    AA = kunneth(A, A, check=False)
    lhs = (P @ mu).toarray() % p                                   # psi(xy)
    rhs = (AA.mult_matrix @ sp.kron(P, P)).toarray() % p           # psi(x) psi(y)
    bad = np.flatnonzero(np.any(lhs != rhs, axis=0))
    if bad.size:
        x, y = divmod(int(bad[0]), r)
        raise AxiomError("coproduct is multiplicative", (lab[x], lab[y]))
    if not np.array_equal((psi @ A.unit) % p, np.kron(A.unit, A.unit) % p):
        raise AxiomError("coproduct preserves the unit", lab[int(np.flatnonzero(A.unit)[0])])

    # chi(xy) = (-1)^(|x||y|) chi(y) chi(x)
    C = sp.csr_matrix(chi)
    lhs = (C @ mu).toarray() % p
    prod = (mu @ sp.kron(C, C)).toarray()
    par = degs % 2
    sign = (1 - 2 * np.outer(par, par)).reshape(-1)
    swap = np.arange(r * r).reshape(r, r).T.reshape(-1)
    rhs = (prod[:, swap] * sign[None, :]) % p
    bad = np.flatnonzero(np.any(lhs != rhs, axis=0))
    if bad.size:
        x, y = divmod(int(bad[0]), r)
        raise AxiomError("antipode is an anti-homomorphism", (lab[x], lab[y]))

    eta_eps = np.outer(A.unit, eps) % p
    conj_l = (mu @ sp.kron(C, I) @ P).toarray() % p
    where = _first_bad_column(conj_l - eta_eps, lab)
    if where is not None:
        raise AxiomError("conjugation identity mu(chi (x) 1)psi = eta eps", where)
    conj_r = (mu @ sp.kron(I, C) @ P).toarray() % p
    where = _first_bad_column(conj_r - eta_eps, lab)
    if where is not None:
        raise AxiomError("conjugation identity mu(1 (x) chi)psi = eta eps", where)
    return True


def attach_hopf(A: GradedAlgebra, psi, chi, check=True) -> HopfAlgebra:
    psi = np.asarray(psi, dtype=np.int64).reshape(A.rank * A.rank, A.rank) % A.p
    chi = np.asarray(chi, dtype=np.int64).reshape(A.rank, A.rank) % A.p
    if check:
        check_hopf(A, psi, chi)
    return HopfAlgebra(A, psi, chi)


def group_coproduct(A: GradedAlgebra):
    """The group-like coproduct g -> g (x) g and antipode g -> g^-1."""
    t = A.group_table
    r = A.rank
    psi = np.zeros((r * r, r), dtype=np.int64)
    psi[np.arange(r) * r + np.arange(r), np.arange(r)] = 1
    chi = np.zeros((r, r), dtype=np.int64)
    for g in range(r):
        inv = int(np.flatnonzero(t[g] == A.group_identity)[0])
        chi[inv, g] = 1
    return psi, chi


def group_hopf(A: GradedAlgebra, check=True) -> HopfAlgebra:
    if not hasattr(A, "group_table"):
        raise TypeError("group_hopf needs an algebra built by group_algebra")
    psi, chi = group_coproduct(A)
    return attach_hopf(A, psi, chi, check=check)


def dual_hopf(H: HopfAlgebra, check=True) -> HopfAlgebra:
    """The dual Hopf algebra: product psi*, coproduct mu*, antipode chi*.

    Pairings follow <f (x) g, x (x) y> = (-1)^(|g||x|) f(x) g(y).
    """
    A = H.algebra
    r, p = A.rank, A.p
    par = A.space.degrees % 2
    sign = (1 - 2 * np.outer(par, par)).reshape(-1)  # indexed by pair i*r+j
    rows, ks = np.nonzero(H.coproduct)
    vals = H.coproduct[rows, ks] * sign[rows]
    products = (rows // r, rows % r, ks, vals)
    i, j, k, c = A.products
    coproduct = np.zeros((r * r, r), dtype=np.int64)
    np.add.at(coproduct, (i * r + j, k), c * sign[i * r + j])
    D = GradedAlgebra(dual_space(A.space), products, A.augmentation, A.unit,
                      commutative=H.is_cocommutative(), weights=-A.weights,
                      weight_moduli=A.weight_moduli, name=f"{A.name}*", check=check)
    return attach_hopf(D, coproduct % p, H.antipode.T.copy(), check=check)


__all__ = ["HopfAlgebra", "attach_hopf", "check_hopf", "dual_hopf", "group_hopf", "group_coproduct"]
