"""Graded associative algebras given by structure constants, and their modules.

Multiplication is stored as COO arrays ``(i, j, k, c)`` meaning
``b_i * b_j += c * b_k``.  Every algebra also carries a *weight* grading that
refines the Z/L degree (exponent vectors for truncated polynomial algebras,
plain degree residues otherwise).  Kernels and images are taken one weight
stratum at a time, which keeps all returned bases homogeneous and the
matrices small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (AxiomError, ContextMismatch, KnDegreeError, MissingAugmentation, NotAGroup,
                     PresentationError)
from .linalg import (CoefficientContext, Degree, GradedMap, GradedSpace, Subspace,
                     RowEchelon, nullspace, rref, subspace_from_columns)


def _coo(i, j, k, c, p):
    i, j, k, c = (np.asarray(x, dtype=np.int64).reshape(-1) for x in (i, j, k, c))
    c = c % p
    keep = c != 0
    return i[keep], j[keep], k[keep], c[keep]


def _merge_coo(i, j, k, c, shape3, p):
    """Sum duplicate (i, j, k) entries mod p."""
    r1, r2, r3 = shape3
    key = (i * r2 + j) * r3 + k
    uniq, inv = np.unique(key, return_inverse=True)
    vals = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(vals, inv, c)
    vals %= p
    keep = vals != 0
    uniq, vals = uniq[keep], vals[keep]
    k = uniq % r3
    ij = uniq // r3
    return ij // r2, ij % r2, k, vals


def weight_keys(weights: np.ndarray, moduli: Sequence[int]) -> np.ndarray:
    """Reduce weight rows by their moduli (0 means an integer component)."""
    w = np.array(weights, dtype=np.int64, copy=True)
    if w.ndim != 2:
        w = w.reshape(len(w), -1)
    for c, m in enumerate(moduli):
        if m:
            w[:, c] %= m
    return w


def strata_of(weights, moduli) -> dict:
    """Map weight key tuple -> indices carrying that weight, in index order."""
    w = weight_keys(weights, moduli)
    if w.shape[0] == 0:
        return {}
    uniq, inv = np.unique(w, axis=0, return_inverse=True)
    inv = np.asarray(inv).reshape(-1)
    out = {}
    for u in range(len(uniq)):
        out[tuple(int(x) for x in uniq[u])] = np.flatnonzero(inv == u)
    return out


class GradedAlgebra:
    """A finite graded associative algebra over K(n)_* with unit and optional augmentation."""

    def __init__(self, space: GradedSpace, products, unit, augmentation=None, *,
                 commutative=False, weights=None, weight_moduli=None, exponents=None,
                 generator_labels=None, name="", check=True):
        self.space = space
        self.ctx = space.ctx
        p = self.ctx.p
        r = space.rank
        self.products = _merge_coo(*_coo(*products, p), (r, r, r), p) if r else tuple(
            np.zeros(0, dtype=np.int64) for _ in range(4))
        self.unit = np.asarray(unit, dtype=np.int64).reshape(r) % p
        self.augmentation = None if augmentation is None else (
            np.asarray(augmentation, dtype=np.int64).reshape(r) % p)
        self.commutative = commutative
        if weights is None:
            weights = space.degrees.reshape(-1, 1)
            weight_moduli = (self.ctx.period,)
        self.weight_moduli = tuple(weight_moduli)
        self.weights = np.asarray(weights, dtype=np.int64).reshape(r, len(self.weight_moduli))
        self.exponents = None if exponents is None else np.asarray(exponents, dtype=np.int64).reshape(r, -1)
        self.generator_labels = tuple(generator_labels) if generator_labels is not None else None
        self.name = name
        if check:
            self.check()

    # -- basic accessors -------------------------------------------------

    @property
    def rank(self) -> int:
        return self.space.rank

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def labels(self):
        return self.space.labels

    def basis_vector(self, i) -> np.ndarray:
        if not isinstance(i, (int, np.integer)):
            i = self.space.index(i)
        v = np.zeros(self.rank, dtype=np.int64)
        v[i] = 1
        return v

    @cached_property
    def mult_matrix(self) -> sp.csr_matrix:
        """Multiplication A (x) A -> A as an r x r^2 sparse matrix."""
        r = self.rank
        i, j, k, c = self.products
        return sp.csr_matrix((c, (k, i * r + j)), shape=(r, r * r), dtype=np.int64)

    def multiply(self, x, y) -> np.ndarray:
        i, j, k, c = self.products
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = np.zeros(self.rank, dtype=np.int64)
        np.add.at(out, k, c * x[i] * y[j])
        return out % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x*y."""
        i, j, k, c = self.products
        x = np.asarray(x, dtype=np.int64)
        m = np.zeros((self.rank, self.rank), dtype=np.int64)
        sel = x[i] != 0
        np.add.at(m, (k[sel], j[sel]), c[sel] * x[i[sel]])
        return m % self.p

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of x -> x*y."""
        i, j, k, c = self.products
        y = np.asarray(y, dtype=np.int64)
        m = np.zeros((self.rank, self.rank), dtype=np.int64)
        sel = y[j] != 0
        np.add.at(m, (k[sel], i[sel]), c[sel] * y[j[sel]])
        return m % self.p

    def epsilon(self, x) -> int:
        if self.augmentation is None:
            raise MissingAugmentation("algebra has no augmentation")
        return int(np.dot(self.augmentation, np.asarray(x, dtype=np.int64)) % self.p)

    def weight_strata(self) -> dict:
        return strata_of(self.weights, self.weight_moduli)

    def weight_key(self, i) -> tuple:
        return tuple(int(x) for x in weight_keys(self.weights[i:i + 1], self.weight_moduli)[0])

    # -- elements ------------------------------------------------------

    def leading_index(self, v) -> Optional[int]:
        nz = np.flatnonzero(np.asarray(v) % self.p)
        return int(nz[-1]) if nz.size else None

    def normalize(self, v) -> np.ndarray:
        """Scale so that the coefficient of the highest basis element is 1."""
        v = np.asarray(v, dtype=np.int64) % self.p
        lead = self.leading_index(v)
        if lead is None:
            return v
        return (v * pow(int(v[lead]), -1, self.p)) % self.p

    def element_degree(self, v) -> Degree:
        """Degree of a homogeneous element; the lift is that of its leading term."""
        v = np.asarray(v) % self.p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            raise ValueError("the zero element has no degree")
        degs = set(int(self.space.degrees[i]) for i in nz)
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return self.space.degree(int(nz[-1]))

    def format(self, v) -> str:
        v = np.asarray(v) % self.p
        terms = []
        for i in np.flatnonzero(v)[::-1]:
            c = int(v[i])
            lab = _label_str(self.labels[i])
            if lab == "1":
                terms.append(str(c))
            else:
                terms.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(terms) if terms else "0"

    # -- verification --------------------------------------------------

    def check(self):
        """Verify algebra axioms; raise AxiomError naming the first failure."""
        r, p, L = self.rank, self.p, self.ctx.period
        i, j, k, c = self.products
        degs = self.space.degrees
        lab = self.labels
        bad = np.flatnonzero((degs[i] + degs[j] - degs[k]) % L)
        if bad.size:
            b = bad[0]
            raise AxiomError("degree additivity", (lab[i[b]], lab[j[b]]))
        wk = weight_keys(self.weights[i] + self.weights[j], self.weight_moduli)
        bad = np.flatnonzero(np.any(wk != weight_keys(self.weights[k], self.weight_moduli), axis=1))
        if bad.size:
            b = bad[0]
            raise AxiomError("weight additivity", (lab[i[b]], lab[j[b]]))
        if r == 0:
            raise AxiomError("unit", "zero algebra")
        if np.any(self.unit[degs != 0]):
            raise AxiomError("unit in degree 0")
        eye = np.eye(r, dtype=np.int64)
        lu = self.left_matrix(self.unit)
        if not np.array_equal(lu, eye):
            col = int(np.flatnonzero(np.any(lu != eye, axis=0))[0])
            raise AxiomError("left unit", lab[col])
        ru = self.right_matrix(self.unit)
        if not np.array_equal(ru, eye):
            col = int(np.flatnonzero(np.any(ru != eye, axis=0))[0])
            raise AxiomError("right unit", lab[col])
        self._check_associative()
        if self.commutative:
            par = degs % 2
            sign = 1 - 2 * (par[i] * par[j])
            swapped = _merge_coo(j, i, k, c * sign, (r, r, r), p)
            if not all(np.array_equal(a, b) for a, b in zip(swapped, self.products)):
                diff = (self.mult_matrix - sp.csr_matrix(
                    (swapped[3], (swapped[2], swapped[0] * r + swapped[1])), shape=(r, r * r)))
                diff.data %= p
                diff.eliminate_zeros()
                col = int(diff.tocoo().col[0])
                raise AxiomError("graded commutativity", (lab[col // r], lab[col % r]))
        if self.augmentation is not None:
            eps = self.augmentation
            if np.any(eps[degs != 0]):
                raise AxiomError("augmentation has degree 0")
            wz = np.any(weight_keys(self.weights, self.weight_moduli) != 0, axis=1)
            if np.any(eps[wz]):
                raise AxiomError("augmentation has weight 0")
            if self.epsilon(self.unit) != 1:
                raise AxiomError("augmentation of unit is 1")
            lhs = (eps @ self.mult_matrix) % p
            rhs = np.outer(eps, eps).reshape(-1) % p
            lhs = np.asarray(lhs).reshape(-1)
            if not np.array_equal(lhs, rhs):
                col = int(np.flatnonzero(lhs != rhs)[0])
                raise AxiomError("augmentation is multiplicative", (lab[col // r], lab[col % r]))
        return True

    def _check_associative(self):
        r, p = self.rank, self.p
        mu = self.mult_matrix
        eye = sp.identity(r, dtype=np.int64, format="csr")
        left = mu @ sp.kron(mu, eye, format="csr")   # (xy)z
        right = mu @ sp.kron(eye, mu, format="csr")  # x(yz)
        diff = (left - right).tocoo()
        bad = diff.data % p != 0
        if bad.any():
            col = int(diff.col[bad][0])
            x, rest = divmod(col, r * r)
            y, z = divmod(rest, r)
            raise AxiomError("associativity", (self.labels[x], self.labels[y], self.labels[z]))

    def with_corrupted_constant(self) -> "GradedAlgebra":
        """Copy with one structure constant perturbed so that associativity fails.

        Only products of two non-unit basis elements are touched, so the unit
        axioms still hold; a negative control for check().
        """
        i, j, k, c = self.products
        unit_idx = int(np.flatnonzero(self.unit)[0])
        for t in np.flatnonzero((i != unit_idx) & (j != unit_idx)):
            c2 = c.copy()
            c2[t] = (c2[t] + 1) % self.p
            B = GradedAlgebra(self.space, (i, j, k, c2), self.unit, self.augmentation,
                              commutative=self.commutative, weights=self.weights,
                              weight_moduli=self.weight_moduli, exponents=self.exponents,
                              generator_labels=self.generator_labels,
                              name=self.name + "[corrupted]", check=False)
            try:
                B._check_associative()
            except AxiomError:
                return B
        raise KnDegreeError(f"no single-constant perturbation of {self.name} breaks associativity")

    def __repr__(self):
        return f"GradedAlgebra({self.name or 'anonymous'}, rank={self.rank}, p={self.p})"


def _label_str(x) -> str:
    if isinstance(x, tuple):
        if len(x) == 2 and x[0] == "*":
            return f"{_label_str(x[1])}*"
        parts = [_label_str(y) for y in x if _label_str(y) != "1"]
        return " ".join(parts) if parts else "1"
    return str(x)


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class Generator:
    """A generator g with g^truncation = sum(coeff * g^exponent for coeff, exponent in relation)."""

    label: str
    degree: object  # int lift or Degree
    truncation: int
    relation: tuple = ()


@dataclass(frozen=True)
class Presentation:
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def __len__(self):
        return len(self.generators)


def _power_table(t: int, rel, p: int) -> np.ndarray:
    """Rows k = 0..2t-2: g^k written in the basis g^0..g^{t-1}."""
    rows = np.zeros((max(2 * t - 1, 1), t), dtype=np.int64)
    for k in range(rows.shape[0]):
        if k < t:
            rows[k, k] = 1
            continue
        for coeff, e in rel:
            rows[k] = (rows[k] + coeff * rows[k - t + e]) % p
    return rows


def monomial_label(labels, exps) -> str:
    parts = []
    for g, e in zip(labels, exps):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return " ".join(parts) if parts else "1"


def from_presentation(ctx: CoefficientContext, pres: Presentation, name="", check=True) -> GradedAlgebra:
    """Truncated polynomial algebra with commuting generators, reduced to its monomial basis.

    Monomials are ordered by total exponent, ties broken so that earlier
    generators come first (a < b < a^2 < a b < b^2 ...).
    """
    p, L = ctx.p, ctx.period
    gens = pres.generators
    degs, lifts, rels, ts, moduli = [], [], [], [], []
    for g in gens:
        if g.truncation < 1:
            raise PresentationError(f"truncation of {g.label} must be >= 1, got {g.truncation}")
        d = ctx.degree(g.degree)
        if d.value % 2:
            raise PresentationError(f"generator {g.label} has odd degree {d.value}")
        rel = tuple((int(c) % p, int(e)) for c, e in g.relation if int(c) % p)
        m = 0
        for c, e in rel:
            if not 0 <= e < g.truncation:
                raise PresentationError(
                    f"relation for {g.label} must only involve exponents below {g.truncation}")
            if ((g.truncation - e) * d.value) % L:
                raise PresentationError(
                    f"relation {g.label}^{g.truncation} = ... is not homogeneous: "
                    f"term of exponent {e} has degree {(e * d.value) % L}, "
                    f"expected {(g.truncation * d.value) % L} mod {L}")
            m = gcd(m, g.truncation - e)
        degs.append(d.value)
        lifts.append(d.lift)
        rels.append(rel)
        ts.append(g.truncation)
        moduli.append(m)
    labels_g = [g.label for g in gens]
    if len(set(labels_g)) != len(labels_g):
        raise PresentationError("duplicate generator label")

    exps = sorted(itertools.product(*(range(t) for t in ts)),
                  key=lambda e: (sum(e), tuple(-x for x in e)))
    exps = np.array(exps, dtype=np.int64).reshape(len(exps), len(gens))
    r = exps.shape[0]
    degrees = (exps @ np.array(degs, dtype=np.int64)) % L if gens else np.zeros(r, dtype=np.int64)
    if gens and all(x is not None for x in lifts):
        lift_vals = tuple(int(x) for x in exps @ np.array(lifts, dtype=np.int64))
    else:
        lift_vals = tuple(0 if not gens else None for _ in range(r))
    labels = tuple(monomial_label(labels_g, e) for e in exps)
    space = GradedSpace(ctx, labels, degrees, lift_vals)

    # mixed-radix code -> basis index
    strides = np.ones(len(gens), dtype=np.int64)
    for a in range(len(gens) - 2, -1, -1):
        strides[a] = strides[a + 1] * ts[a + 1]
    code_to_idx = np.empty(r, dtype=np.int64)
    code_to_idx[exps @ strides if gens else np.zeros(r, dtype=np.int64)] = np.arange(r)

    I, J, K, C = [], [], [], []
    tables = [_power_table(t, rel, p) for t, rel in zip(ts, rels)]
    if all(not rel for rel in rels):
        for a in range(r):
            s = exps[a][None, :] + exps
            ok = np.all(s < np.array(ts)[None, :], axis=1) if gens else np.ones(r, dtype=bool)
            js = np.flatnonzero(ok)
            I.append(np.full(js.size, a))
            J.append(js)
            K.append(code_to_idx[s[js] @ strides] if gens else np.zeros(js.size, dtype=np.int64))
            C.append(np.ones(js.size, dtype=np.int64))
    else:
        for a in range(r):
            for b in range(r):
                coeffs = reduce(np.kron, [tables[g][exps[a, g] + exps[b, g]] for g in range(len(gens))],
                                np.ones(1, dtype=np.int64)) % p
                nz = np.flatnonzero(coeffs)
                I.append(np.full(nz.size, a))
                J.append(np.full(nz.size, b))
                K.append(code_to_idx[nz])
                C.append(coeffs[nz])
    products = tuple(np.concatenate(x) if x else np.zeros(0, dtype=np.int64) for x in (I, J, K, C))
    unit = np.zeros(r, dtype=np.int64)
    unit[0] = 1
    return GradedAlgebra(space, products, unit, unit.copy(), commutative=True,
                         weights=exps if gens else np.zeros((r, 1), dtype=np.int64),
                         weight_moduli=tuple(moduli) if gens else (0,),
                         exponents=exps, generator_labels=labels_g, name=name, check=check)


def unit_algebra(ctx: CoefficientContext, name="R") -> GradedAlgebra:
    return from_presentation(ctx, Presentation(()), name=name)


# ---------------------------------------------------------------------------
# Group algebras


def cyclic_group_table(m: int):
    return [[(a + b) % m for b in range(m)] for a in range(m)]


def check_group_table(table):
    """Return the identity index, or raise NotAGroup."""
    m = len(table)
    if m == 0:
        raise NotAGroup("empty table")
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (m, m) or t.min() < 0 or t.max() >= m:
        raise NotAGroup("table must be a square array of element indices")
    ids = [e for e in range(m) if np.array_equal(t[e], np.arange(m)) and np.array_equal(t[:, e], np.arange(m))]
    if not ids:
        raise NotAGroup("no two-sided identity")
    e = ids[0]
    for a in range(m):
        if not np.any(t[a] == e) or not np.any(t[:, a] == e):
            raise NotAGroup(f"element {a} has no inverse")
    # (ab)c == a(bc) for all triples
    lhs = t[t[:, :, None], np.arange(m)[None, None, :]]
    rhs = t[np.arange(m)[:, None, None], t[None, :, :]]
    if not np.array_equal(lhs, rhs):
        a, b, c = map(int, np.argwhere(lhs != rhs)[0])
        raise NotAGroup(f"not associative at ({a}, {b}, {c})")
    return e


def group_algebra(ctx: CoefficientContext, table, labels=None, name="", check=True) -> GradedAlgebra:
    """R[G] for a finite group given by ``table[a][b] = index of g_a g_b``.

    All basis elements sit in degree 0 and the augmentation sends each g to 1.
    """
    e = check_group_table(table)
    t = np.asarray(table, dtype=np.int64)
    m = len(table)
    if labels is None:
        labels = tuple(f"g{a}" for a in range(m))
    space = GradedSpace(ctx, tuple(labels), np.zeros(m, dtype=np.int64), (0,) * m)
    I, J = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    products = (I.reshape(-1), J.reshape(-1), t.reshape(-1), np.ones(m * m, dtype=np.int64))
    unit = np.zeros(m, dtype=np.int64)
    unit[e] = 1
    commutative = bool(np.array_equal(t, t.T))
    alg = GradedAlgebra(space, products, unit, np.ones(m, dtype=np.int64), commutative=commutative,
                        exponents=np.arange(m).reshape(m, 1), name=name or f"R[G], |G|={m}",
                        check=check)
    alg.group_table = t
    alg.group_identity = e
    return alg


def cyclic_group_algebra(ctx: CoefficientContext, m: int, check=True) -> GradedAlgebra:
    labels = tuple("1" if a == 0 else ("g" if a == 1 else f"g^{a}") for a in range(m))
    return group_algebra(ctx, cyclic_group_table(m), labels=labels, name=f"R[Z/{m}]", check=check)


# ---------------------------------------------------------------------------
# Kunneth products


def kunneth(A: GradedAlgebra, B: GradedAlgebra, check=True) -> GradedAlgebra:
    """A (x) B with (a (x) b)(a' (x) b') = (-1)^(|b||a'|) aa' (x) bb'.

    Basis pairs are ordered A-major.
    """
    if A.ctx != B.ctx:
        raise ContextMismatch(f"{A.ctx} != {B.ctx}")
    ctx = A.ctx
    ra, rb = A.rank, B.rank
    ai, aj, ak, ac = A.products
    bi, bj, bk, bc = B.products
    par_a = A.space.degrees % 2
    par_b = B.space.degrees % 2
    I = (ai[:, None] * rb + bi[None, :]).reshape(-1)
    J = (aj[:, None] * rb + bj[None, :]).reshape(-1)
    K = (ak[:, None] * rb + bk[None, :]).reshape(-1)
    sign = 1 - 2 * (par_a[aj][:, None] * par_b[bi][None, :])
    C = (ac[:, None] * bc[None, :] * sign).reshape(-1)
    labels = tuple((x, y) for x in A.labels for y in B.labels)
    degs = (A.space.degrees[:, None] + B.space.degrees[None, :]).reshape(-1)
    lifts = tuple(None if (x is None or y is None) else x + y for x in A.space.lifts for y in B.space.lifts)
    space = GradedSpace(ctx, labels, degs, lifts)
    unit = np.kron(A.unit, B.unit)
    aug = None
    if A.augmentation is not None and B.augmentation is not None:
        aug = np.kron(A.augmentation, B.augmentation)
    weights = np.hstack([np.repeat(A.weights, rb, axis=0), np.tile(B.weights, (ra, 1))])
    exps = None
    if A.exponents is not None and B.exponents is not None:
        exps = np.hstack([np.repeat(A.exponents, rb, axis=0), np.tile(B.exponents, (ra, 1))])
    gl = None
    if A.generator_labels is not None and B.generator_labels is not None:
        gl = A.generator_labels + B.generator_labels
    return GradedAlgebra(space, (I, J, K, C), unit, aug,
                         commutative=A.commutative and B.commutative,
                         weights=weights, weight_moduli=A.weight_moduli + B.weight_moduli,
                         exponents=exps, generator_labels=gl,
                         name=f"({A.name}) (x) ({B.name})", check=check)


# ---------------------------------------------------------------------------
# Ideals and annihilators


@dataclass(frozen=True, eq=False)
class Ideal:
    algebra: GradedAlgebra
    sub: Subspace

    @property
    def basis(self) -> np.ndarray:
        return self.sub.basis

    @property
    def rank(self) -> int:
        return self.sub.rank

    def is_closed(self) -> bool:
        """Two-sided closure under multiplication by basis elements."""
        return _is_two_sided(self.algebra, self.basis)


def _in_span(basis, vecs, p) -> bool:
    ech = RowEchelon(basis.shape[0], p)
    if basis.shape[1]:
        ech.add(basis.T)
    red = ech.reduce(np.asarray(vecs).T)
    return not np.any(red)


def _is_two_sided(A: GradedAlgebra, basis) -> bool:
    r, p = A.rank, A.p
    prods = []
    for col in range(basis.shape[1]):
        y = basis[:, col]
        prods.append(A.left_matrix(y))
        prods.append(A.right_matrix(y))
    if not prods:
        return True
    return _in_span(basis, np.hstack(prods), p)


def _stratum_subspace(A, pieces, prefix):
    """Assemble (weight-index array, coefficient columns) pieces into a Subspace of A."""
    cols, degs = [], []
    for idx, block in pieces:
        for k in range(block.shape[1]):
            v = np.zeros(A.rank, dtype=np.int64)
            v[idx] = block[:, k]
            cols.append(v)
            degs.append(int(A.space.degrees[idx[0]]))
    cols = np.array(cols, dtype=np.int64).T if cols else np.zeros((A.rank, 0), dtype=np.int64)
    return subspace_from_columns(A.space, cols, degs, prefix=prefix)


def augmentation_ideal(A: GradedAlgebra) -> Ideal:
    if A.augmentation is None:
        raise MissingAugmentation("augmentation ideal needs an augmentation")
    pieces = []
    for idx in A.weight_strata().values():
        pieces.append((idx, nullspace(A.augmentation[idx][None, :], A.p)))
    return Ideal(A, _stratum_subspace(A, pieces, "aug"))


def left_annihilator(A: GradedAlgebra, I) -> Subspace:
    """{x in A : x y = 0 for every y in I}, with a homogeneous basis.

    ``I`` is an Ideal, Subspace, or matrix whose columns span it.
    """
    basis = I.basis if hasattr(I, "basis") else np.asarray(I, dtype=np.int64)
    p = A.p
    rights = [A.right_matrix(basis[:, c]) for c in range(basis.shape[1])]
    pieces = []
    for idx in A.weight_strata().values():
        K = np.eye(len(idx), dtype=np.int64)
        for R in rights:
            if K.shape[1] == 0:
                break
            img = (R[:, idx] @ K) % p
            if not img.any():
                continue
            K = (K @ nullspace(img, p)) % p
        pieces.append((idx, K))
    return _stratum_subspace(A, pieces, "ann")


# ---------------------------------------------------------------------------
# Left modules


class Module:
    """A finite left module; action COO ``(a, m, m2, c)`` means b_a . m_m += c m_m2."""

    def __init__(self, algebra: GradedAlgebra, space: GradedSpace, action, *, weights=None,
                 name="", check=True):
        if space.ctx != algebra.ctx:
            raise ContextMismatch("module and algebra contexts differ")
        self.algebra = algebra
        self.space = space
        self.ctx = space.ctx
        ra, rm, p = algebra.rank, space.rank, self.ctx.p
        self.action = _merge_coo(*_coo(*action, p), (ra, rm, rm), p) if rm else tuple(
            np.zeros(0, dtype=np.int64) for _ in range(4))
        if weights is None:
            if algebra.weight_moduli != (self.ctx.period,):
                raise ValueError("module weights required for a finely graded algebra")
            weights = space.degrees.reshape(-1, 1)
        self.weights = np.asarray(weights, dtype=np.int64).reshape(rm, len(algebra.weight_moduli))
        self.name = name
        if check:
            self.check()

    @property
    def rank(self):
        return self.space.rank

    @cached_property
    def action_matrix(self) -> sp.csr_matrix:
        """A (x) M -> M as an rank(M) x rank(A)*rank(M) sparse matrix."""
        rm = self.rank
        a, m, m2, c = self.action
        return sp.csr_matrix((c, (m2, a * rm + m)), shape=(rm, self.algebra.rank * rm), dtype=np.int64)

    def act_matrix(self, x) -> np.ndarray:
        """Matrix of m -> x . m."""
        a, m, m2, c = self.action
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros((self.rank, self.rank), dtype=np.int64)
        sel = x[a] != 0
        np.add.at(out, (m2[sel], m[sel]), c[sel] * x[a[sel]])
        return out % self.ctx.p

    def weight_strata(self):
        return strata_of(self.weights, self.algebra.weight_moduli)

    def check(self):
        A, p, L = self.algebra, self.ctx.p, self.ctx.period
        a, m, m2, c = self.action
        lab = self.space.labels
        bad = np.flatnonzero((A.space.degrees[a] + self.space.degrees[m] - self.space.degrees[m2]) % L)
        if bad.size:
            raise AxiomError("module action is degree additive", (A.labels[a[bad[0]]], lab[m[bad[0]]]))
        wk = weight_keys(A.weights[a] + self.weights[m], A.weight_moduli)
        bad = np.flatnonzero(np.any(wk != weight_keys(self.weights[m2], A.weight_moduli), axis=1))
        if bad.size:
            raise AxiomError("module action is weight additive", (A.labels[a[bad[0]]], lab[m[bad[0]]]))
        if self.rank == 0:
            return True
        u = self.act_matrix(A.unit)
        eye = np.eye(self.rank, dtype=np.int64)
        if not np.array_equal(u, eye):
            col = int(np.flatnonzero(np.any(u != eye, axis=0))[0])
            raise AxiomError("unit acts as identity", lab[col])
        act = self.action_matrix
        eye_m = sp.identity(self.rank, dtype=np.int64, format="csr")
        eye_a = sp.identity(A.rank, dtype=np.int64, format="csr")
        lhs = act @ sp.kron(A.mult_matrix, eye_m, format="csr")   # (xy).m
        rhs = act @ sp.kron(eye_a, act, format="csr")             # x.(y.m)
        diff = (lhs - rhs).tocoo()
        badm = diff.data % p != 0
        if badm.any():
            col = int(diff.col[badm][0])
            x, rest = divmod(col, A.rank * self.rank)
            y, z = divmod(rest, self.rank)
            raise AxiomError("module associativity", (A.labels[x], A.labels[y], lab[z]))
        return True

    def __repr__(self):
        return f"Module({self.name or 'anonymous'}, rank={self.rank})"


def regular_module(A: GradedAlgebra) -> Module:
    return Module(A, A.space, A.products, weights=A.weights, name=f"{A.name} (regular)", check=False)


def dual_module(A: GradedAlgebra, check=True) -> Module:
    """A* = Hom(A, R) with (a . f)(y) = f(y a); degrees and weights negated."""
    from .linalg import dual_space
    i, j, k, c = A.products
    # (b_j . b_k*)(b_i) = coefficient of b_k in b_i b_j, so b_j . b_k* has b_i* coefficient c
    action = (j, k, i, c)
    return Module(A, dual_space(A.space), action, weights=-A.weights,
                  name=f"{A.name}*", check=check)


def trivial_module(A: GradedAlgebra) -> Module:
    """R with A acting through the augmentation."""
    if A.augmentation is None:
        raise MissingAugmentation("trivial module needs an augmentation")
    space = GradedSpace(A.ctx, ("1",), np.zeros(1, dtype=np.int64), (0,))
    a = np.flatnonzero(A.augmentation)
    action = (a, np.zeros_like(a), np.zeros_like(a), A.augmentation[a])
    return Module(A, space, action, weights=np.zeros((1, A.weights.shape[1]), dtype=np.int64),
                  name="R")


@dataclass(frozen=True, eq=False)
class Quotient:
    """V / W with a homogeneous complement basis and the projection V -> V/W."""

    space: GradedSpace
    projection: GradedMap
    section: np.ndarray  # columns: chosen representatives in V

    @property
    def rank(self):
        return self.space.rank


def module_indecomposables(A: GradedAlgebra, M: Module) -> Quotient:
    """M / (aug ideal . M), computed weight stratum by weight stratum."""
    if M.algebra is not A:
        # accept a structurally identical algebra, but require matching shape
        if M.algebra.rank != A.rank:
            raise ValueError("module is over a different algebra")
    aug = augmentation_ideal(A)
    p = A.p
    rm = M.rank
    acts = [M.act_matrix(aug.basis[:, c]) for c in range(aug.rank)]
    proj_rows, reps, degs, lifts = [], [], [], []
    for idx in M.weight_strata().values():
        ech = RowEchelon(len(idx), p)
        for act in acts:
            blk = act[idx, :]
            if blk.any():
                ech.add(blk.T)
            if ech.rank == len(idx):
                break
        free = [c for c in range(len(idx)) if c not in set(ech.pivots)]
        # row t: unit vector t reduced against the image; free coordinates survive
        red = ech.reduce(np.eye(len(idx), dtype=np.int64)) if free else None
        for f in free:
            row = np.zeros(rm, dtype=np.int64)
            row[idx] = red[:, f]
            proj_rows.append(row)
            rep = np.zeros(rm, dtype=np.int64)
            rep[idx[f]] = 1
            reps.append(rep)
            degs.append(int(M.space.degrees[idx[f]]))
            lifts.append(M.space.lifts[idx[f]])
    k = len(reps)
    space = GradedSpace(A.ctx, tuple(f"q{t}" for t in range(k)), np.array(degs, dtype=np.int64),
                        tuple(lifts))
    proj = np.array(proj_rows, dtype=np.int64).reshape(k, rm)
    section = np.array(reps, dtype=np.int64).T.reshape(rm, k)
    return Quotient(space, GradedMap(M.space, space, proj), section)


__all__ = [
    "GradedAlgebra", "Generator", "Presentation", "Ideal", "Module", "Quotient",
    "from_presentation", "unit_algebra", "group_algebra", "cyclic_group_algebra",
    "cyclic_group_table", "check_group_table", "kunneth", "augmentation_ideal",
    "left_annihilator", "regular_module", "dual_module", "trivial_module",
    "module_indecomposables", "strata_of", "weight_keys", "monomial_label",
]
