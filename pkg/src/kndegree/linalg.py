"""Exact linear algebra over F_p for finite Z/L-graded vector spaces.

Coefficients live in K(n)_* = F_p[v_n, v_n^-1].  Since v_n is an invertible
class of degree L = 2(p^n - 1), a K(n)_*-module is recorded as a Z/L-graded
F_p vector space with v_n acting as the identity; only degree residues
mod L matter for comparisons, but every basis element may carry an integer
lift for reporting.

Matrices are dense ``numpy.int64`` arrays with entries reduced to 0..p-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ContextMismatch, SpaceError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Degree:
    """A degree residue mod L, with the integer it was constructed from."""

    value: int
    lift: Optional[int] = None

    @property
    def parity(self) -> int:
        return self.value % 2


@dataclass(frozen=True)
class CoefficientContext:
    """The prime p, the height n, and the grading period L = 2(p^n - 1)."""

    p: int
    n: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise SpaceError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise SpaceError(f"n must be a positive integer, got {self.n!r}")

    @property
    def period(self) -> int:
        return 2 * (self.p ** self.n - 1)

    L = period

    def degree(self, d) -> Degree:
        """Coerce an int (taken as a lift) or a Degree into a reduced Degree."""
        if isinstance(d, Degree):
            if d.lift is not None and d.lift % self.period != d.value % self.period:
                raise SpaceError(f"lift {d.lift} does not reduce to {d.value} mod {self.period}")
            return Degree(d.value % self.period, d.lift)
        d = int(d)
        return Degree(d % self.period, d)

    def reduce(self, x):
        return np.asarray(x, dtype=np.int64) % self.p


def _check_same_context(*objs):
    ctx = objs[0].ctx
    for o in objs[1:]:
        if o.ctx != ctx:
            raise ContextMismatch(f"{ctx} != {o.ctx}")
    return ctx


# ---------------------------------------------------------------------------
# Gaussian elimination mod p


def rref(mat, p: int):
    """Reduced row echelon form of ``mat`` over F_p.

    Returns ``(R, pivots)`` where R holds only the nonzero rows.
    """
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = a.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), -1, p)
        if inv != 1:
            a[row, col:] = (a[row, col:] * inv) % p
        colv = a[:, col].copy()
        colv[row] = 0
        hit = np.flatnonzero(colv)
        if hit.size:
            a[hit, col:] = (a[hit, col:] - np.outer(colv[hit], a[row, col:])) % p
        pivots.append(col)
        row += 1
    return a[:row], pivots


def rank_mod_p(mat, p: int) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    # eliminate along the shorter side
    if mat.shape[0] > mat.shape[1]:
        mat = mat.T
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Columns spanning {x : mat @ x = 0} over F_p, in canonical RREF form."""
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(mat, p)
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(pivots):
            out[pc, k] = (-r[i, f]) % p
    return out


def inverse_mod_p(mat, p: int) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.int64)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.hstack([mat % p, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:n, n:]


def solve_mod_p(mat, rhs, p: int):
    """One solution x of mat @ x = rhs, or None if inconsistent."""
    mat = np.asarray(mat, dtype=np.int64) % p
    rhs = np.asarray(rhs, dtype=np.int64).reshape(mat.shape[0], -1) % p
    k = rhs.shape[1]
    n = mat.shape[1]
    r, pivots = rref(np.hstack([mat, rhs]), p)
    if any(pc >= n for pc in pivots):
        return None
    x = np.zeros((n, k), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x


class RowEchelon:
    """Incrementally grown row space over F_p, kept in reduced echelon form.

    Used to take ranks of very wide matrices a chunk of columns at a time.
    """

    def __init__(self, width: int, p: int):
        self.p = p
        self.width = width
        self.rows = np.zeros((0, width), dtype=np.int64)
        self.pivots: list = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vecs) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64) % self.p
        if self.pivots and vecs.size:
            vecs = (vecs - vecs[:, self.pivots] @ self.rows) % self.p
        return vecs

    def add(self, vecs) -> int:
        """Add row vectors; return how many were new."""
        vecs = self.reduce(vecs)
        vecs = vecs[np.any(vecs, axis=1)]
        if vecs.shape[0] == 0:
            return 0
        new, npiv = rref(vecs, self.p)
        if self.pivots:
            self.rows = (self.rows - self.rows[:, npiv] @ new) % self.p
        rows = np.vstack([self.rows, new])
        piv = self.pivots + list(npiv)
        order = np.argsort(piv, kind="stable")
        self.rows = rows[order]
        self.pivots = [piv[i] for i in order]
        return len(npiv)


def column_rank(columns, p: int, stop_at: Optional[int] = None, chunk: Optional[int] = None) -> int:
    """Rank of a (possibly scipy-sparse) matrix, processed by column chunks.

    Stops early once ``stop_at`` independent columns have been found.
    """
    m, n = columns.shape
    if chunk is None:
        chunk = max(64, 2 * m)
    if m == 0 or n == 0:
        return 0
    limit = min(m, n) if stop_at is None else min(m, n, stop_at)
    if limit == 0:
        return 0
    ech = RowEchelon(m, p)
    is_sparse = hasattr(columns, "tocsc")
    if is_sparse:
        columns = columns.tocsc()
    for start in range(0, n, chunk):
        block = columns[:, start:start + chunk]
        block = block.toarray() if is_sparse else np.asarray(block)
        ech.add(block.T)
        if ech.rank >= limit:
            break
    return ech.rank


# ---------------------------------------------------------------------------
# Graded spaces and maps


@dataclass(frozen=True, eq=False)
class GradedSpace:
    """A finite-dimensional Z/L-graded F_p vector space with a labeled basis."""

    ctx: CoefficientContext
    labels: tuple
    degrees: np.ndarray  # residues mod L
    lifts: tuple = field(default=())

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            seen = set()
            dup = next(x for x in self.labels if x in seen or seen.add(x))
            raise SpaceError(f"duplicate basis label {dup!r}")
        degs = np.asarray(self.degrees, dtype=np.int64).reshape(-1) % self.ctx.period
        object.__setattr__(self, "degrees", degs)
        if not self.lifts:
            object.__setattr__(self, "lifts", (None,) * len(self.labels))
        if len(degs) != len(self.labels) or len(self.lifts) != len(self.labels):
            raise SpaceError("labels, degrees and lifts differ in length")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __len__(self):
        return self.rank

    def degree(self, i) -> Degree:
        return Degree(int(self.degrees[i]), self.lifts[i])

    def index(self, label) -> int:
        return self.labels.index(label)

    def parities(self) -> np.ndarray:
        return self.degrees % 2

    def strata(self):
        """Map degree residue -> array of basis indices in that degree."""
        out = {}
        for d in np.unique(self.degrees):
            out[int(d)] = np.flatnonzero(self.degrees == d)
        return out

    def same_shape(self, other) -> bool:
        return (self.ctx == other.ctx and self.rank == other.rank
                and np.array_equal(self.degrees, other.degrees))

    def __repr__(self):
        return f"GradedSpace(rank={self.rank}, degrees={self.degrees.tolist()})"


def make_space(ctx: CoefficientContext, basis: Iterable) -> GradedSpace:
    """Build a graded space from ``(label, degree)`` pairs.

    Integer degrees are taken as lifts and reduced mod L.
    """
    labels, degs, lifts = [], [], []
    for label, d in basis:
        d = ctx.degree(d)
        labels.append(label)
        degs.append(d.value)
        lifts.append(d.lift)
    return GradedSpace(ctx, tuple(labels), np.array(degs, dtype=np.int64), tuple(lifts))


@dataclass(frozen=True, eq=False)
class GradedMap:
    """A degree-homogeneous linear map; column j is the image of source basis j."""

    source: GradedSpace
    target: GradedSpace
    matrix: np.ndarray
    shift: int = 0

    def __post_init__(self):
        ctx = _check_same_context(self.source, self.target)
        mat = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        object.__setattr__(self, "matrix", mat % ctx.p)
        object.__setattr__(self, "shift", int(self.shift) % ctx.period)
        want = (self.source.degrees[None, :] + self.shift) % ctx.period
        bad = (mat % ctx.p != 0) & (self.target.degrees[:, None] != want)
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise SpaceError(
                f"map is not homogeneous of degree {self.shift}: "
                f"{self.source.labels[j]!r} -> {self.target.labels[i]!r}")

    @property
    def ctx(self):
        return self.source.ctx

    def __call__(self, vec):
        return (self.matrix @ np.asarray(vec, dtype=np.int64)) % self.ctx.p

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other"""
        return GradedMap(other.source, self.target,
                         (self.matrix @ other.matrix) % self.ctx.p,
                         self.shift + other.shift)

    def rank(self) -> int:
        return rank_mod_p(self.matrix, self.ctx.p)


def identity_map(V: GradedSpace) -> GradedMap:
    return GradedMap(V, V, np.eye(V.rank, dtype=np.int64))


def zero_map(V: GradedSpace, W: GradedSpace, shift=0) -> GradedMap:
    return GradedMap(V, W, np.zeros((W.rank, V.rank), dtype=np.int64), shift)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace with homogeneous basis; ``basis`` columns live in the ambient space."""

    space: GradedSpace
    inclusion: GradedMap

    @property
    def basis(self) -> np.ndarray:
        return self.inclusion.matrix

    @property
    def rank(self) -> int:
        return self.space.rank


def subspace_from_columns(ambient: GradedSpace, cols, degrees, prefix="v") -> Subspace:
    cols = np.asarray(cols, dtype=np.int64).reshape(ambient.rank, -1)
    k = cols.shape[1]
    lifts = []
    for j in range(k):
        # lift of the highest basis element in the support
        nz = np.flatnonzero(cols[:, j])
        lifts.append(ambient.lifts[nz[-1]] if nz.size else None)
    space = GradedSpace(ambient.ctx, tuple(f"{prefix}{j}" for j in range(k)),
                        np.asarray(degrees, dtype=np.int64), tuple(lifts))
    return Subspace(space, GradedMap(space, ambient, cols))


def kernel(f: GradedMap) -> Subspace:
    """Homogeneous basis of ker f, computed one source degree at a time."""
    p = f.ctx.p
    cols, degs = [], []
    for d, idx in f.source.strata().items():
        ns = nullspace(f.matrix[:, idx], p)
        for k in range(ns.shape[1]):
            v = np.zeros(f.source.rank, dtype=np.int64)
            v[idx] = ns[:, k]
            cols.append(v)
            degs.append(d)
    cols = np.array(cols, dtype=np.int64).T if cols else np.zeros((f.source.rank, 0), dtype=np.int64)
    return subspace_from_columns(f.source, cols, degs, prefix="ker")


def image(f: GradedMap) -> Subspace:
    """Homogeneous basis of im f, computed one target degree at a time."""
    p = f.ctx.p
    cols, degs = [], []
    for d, idx in f.target.strata().items():
        r, _ = rref(f.matrix[idx, :].T, p)
        for row in r:
            v = np.zeros(f.target.rank, dtype=np.int64)
            v[idx] = row
            cols.append(v)
            degs.append(d)
    cols = np.array(cols, dtype=np.int64).T if cols else np.zeros((f.target.rank, 0), dtype=np.int64)
    return subspace_from_columns(f.target, cols, degs, prefix="im")


# ---------------------------------------------------------------------------
# Tensor products and duals


def tensor(V: GradedSpace, W: GradedSpace) -> GradedSpace:
    """V (x) W with basis pairs in V-major order; degrees add."""
    ctx = _check_same_context(V, W)
    labels = tuple((a, b) for a in V.labels for b in W.labels)
    degs = (V.degrees[:, None] + W.degrees[None, :]).reshape(-1)
    lifts = tuple(None if (x is None or y is None) else x + y for x in V.lifts for y in W.lifts)
    return GradedSpace(ctx, labels, degs, lifts)


def koszul_signs(first_parity, second_parity) -> np.ndarray:
    """Matrix of (-1)^(|x||y|) as residues 1 or -1."""
    par = np.outer(np.asarray(first_parity) % 2, np.asarray(second_parity) % 2)
    return 1 - 2 * par


def tensor_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """(f (x) g)(v (x) w) = (-1)^(|g||v|) f(v) (x) g(w)."""
    ctx = _check_same_context(f, g)
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    mat = np.kron(f.matrix, g.matrix)
    if g.shift % 2:
        sign = np.repeat(1 - 2 * (f.source.degrees % 2), g.source.rank)
        mat = mat * sign[None, :]
    return GradedMap(src, tgt, mat % ctx.p, f.shift + g.shift)


def dual_label(x):
    if isinstance(x, tuple) and len(x) == 2 and x[0] == "*":
        return x[1]
    return ("*", x)


def dual_space(V: GradedSpace) -> GradedSpace:
    labels = tuple(dual_label(x) for x in V.labels)
    lifts = tuple(None if x is None else -x for x in V.lifts)
    return GradedSpace(V.ctx, labels, (-V.degrees) % V.ctx.period, lifts)


def dual_map(f: GradedMap, source=None, target=None) -> GradedMap:
    """f*: W* -> V*, (f* xi)(v) = (-1)^(|f||xi|) xi(f v)."""
    src = source if source is not None else dual_space(f.target)
    tgt = target if target is not None else dual_space(f.source)
    mat = f.matrix.T.copy()
    if f.shift % 2:
        mat = mat * (1 - 2 * (src.degrees % 2))[None, :]
    return GradedMap(src, tgt, mat % f.ctx.p, -f.shift)


def degree_multiset(V: GradedSpace) -> list:
    return sorted(int(d) for d in V.degrees)


__all__ = [
    "CoefficientContext", "Degree", "GradedSpace", "GradedMap", "Subspace", "RowEchelon",
    "make_space", "kernel", "image", "tensor", "tensor_maps", "dual_space", "dual_map",
    "identity_map", "zero_map", "rref", "rank_mod_p", "nullspace", "inverse_mod_p",
    "solve_mod_p", "column_rank", "koszul_signs", "is_prime", "degree_multiset",
    "subspace_from_columns",
]
