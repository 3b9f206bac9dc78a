"""Tor over a finite augmented algebra via the normalized bar complex.

C_s = Abar^{(x)s} (x) M where Abar is the augmentation ideal, with

    d[a_1|...|a_s]m = sum_{i<s} (-1)^{e_i} [..|a_i a_{i+1}|..]m + (-1)^{e_s} [a_1|...|a_{s-1}] a_s m,

    e_i = sum_{j<=i} (|a_j| + 1).

The leftmost face vanishes because the augmentation kills Abar.  Every
face preserves the weight grading, so homology is computed one weight
stratum at a time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .algebra import GradedAlgebra, Module, augmentation_ideal, weight_keys
from .errors import BudgetExceeded, MissingAugmentation
from .linalg import column_rank, inverse_mod_p

DEFAULT_TOR_BUDGET = 1_000_000


def tor_budget() -> int:
    return int(os.environ.get("MORAVA_TOR_BUDGET", DEFAULT_TOR_BUDGET))


@dataclass(frozen=True)
class TorRow:
    s: int
    rank: int
    degrees: tuple  # residues mod L, sorted


@dataclass(frozen=True)
class TorTable:
    s_max: int
    rows: tuple = field(default=())

    def rank(self, s) -> int:
        return self.rows[s].rank

    def vanishes_above_zero(self) -> bool:
        return all(row.rank == 0 for row in self.rows[1:])

    def to_json(self) -> list:
        return [{"s": r.s, "rank": r.rank, "degrees": list(r.degrees)} for r in self.rows]


@dataclass
class BarData:
    """Abar in a homogeneous basis, its products, and its action on M."""

    rank: int
    parity: np.ndarray
    degrees: np.ndarray
    weights: np.ndarray
    products: tuple   # (a, b, c, coeff): abar_a abar_b += coeff abar_c
    action: tuple     # (a, m, m2, coeff): abar_a . m_m += coeff m_m2


def bar_data(A: GradedAlgebra, M: Module) -> BarData:
    if A.augmentation is None:
        raise MissingAugmentation("Tor over A needs an augmentation")
    p, r = A.p, A.rank
    u = np.flatnonzero(A.unit)
    simple = (len(u) == 1 and A.unit[u[0]] == 1 and np.array_equal(A.augmentation, A.unit))
    if simple:
        keep = np.setdiff1d(np.arange(r), u)
        U = sp.identity(r, dtype=np.int64, format="csr")[:, keep]
        P = sp.identity(r, dtype=np.int64, format="csr")[keep, :]
        rep = keep
    else:
        aug = augmentation_ideal(A)
        Ud = aug.basis
        B = np.hstack([A.unit[:, None], Ud])
        P = sp.csr_matrix(inverse_mod_p(B, p)[1:, :])
        U = sp.csr_matrix(Ud)
        rep = np.array([np.flatnonzero(Ud[:, c])[0] for c in range(Ud.shape[1])], dtype=np.int64)
    rb = len(rep)
    prod = (P @ A.mult_matrix @ sp.kron(U, U, format="csr")).tocoo()
    pc = prod.data % p
    sel = pc != 0
    products = (prod.col[sel] // rb, prod.col[sel] % rb, prod.row[sel], pc[sel])
    act = (M.action_matrix @ sp.kron(U, sp.identity(M.rank, dtype=np.int64), format="csr")).tocoo()
    ac = act.data % p
    sel = ac != 0
    action = (act.col[sel] // M.rank, act.col[sel] % M.rank, act.row[sel], ac[sel])
    degs = A.space.degrees[rep]
    return BarData(rb, degs % 2, degs, A.weights[rep], tuple(np.asarray(x, dtype=np.int64) for x in products),
                   tuple(np.asarray(x, dtype=np.int64) for x in action))


def _prefix_parity(parity, k):
    out = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        out = ((out[:, None] + parity[None, :]) % 2).reshape(-1)
    return out


def bar_differential(bd: BarData, rm: int, s: int, p: int) -> sp.csr_matrix:
    """d_s : C_s -> C_{s-1} as a sparse matrix."""
    rb = bd.rank
    n_src = rb ** s * rm
    n_tgt = rb ** (s - 1) * rm
    rows, cols, vals = [], [], []
    a, b, c, coef = bd.products
    for i in range(1, s):
        pre = np.arange(rb ** (i - 1))
        suf = np.arange(rb ** (s - i - 1) * rm)
        S = len(suf)
        par = _prefix_parity(bd.parity, i - 1)
        src = ((pre[:, None, None] * rb + a[None, :, None]) * rb + b[None, :, None]) * S + suf[None, None, :]
        tgt = (pre[:, None, None] * rb + c[None, :, None]) * S + suf[None, None, :]
        e = (i + par[:, None, None] + bd.parity[a][None, :, None]) % 2
        v = coef[None, :, None] * (1 - 2 * e)
        v = np.broadcast_to(v, src.shape)
        rows.append(tgt.reshape(-1))
        cols.append(src.reshape(-1))
        vals.append(v.reshape(-1))
    a, m, m2, coef = bd.action
    pre = np.arange(rb ** (s - 1))
    par = _prefix_parity(bd.parity, s - 1)
    src = (pre[:, None] * rb + a[None, :]) * rm + m[None, :]
    tgt = pre[:, None] * rm + m2[None, :]
    e = (s + par[:, None] + bd.parity[a][None, :]) % 2
    v = coef[None, :] * (1 - 2 * e)
    rows.append(tgt.reshape(-1))
    cols.append(src.reshape(-1))
    vals.append(v.reshape(-1))
    d = sp.csr_matrix((np.concatenate(vals) % p, (np.concatenate(rows), np.concatenate(cols))),
                      shape=(n_tgt, n_src), dtype=np.int64)
    d.data %= p
    d.eliminate_zeros()
    return d


def chain_weights(bd: BarData, M: Module, s: int) -> np.ndarray:
    w = M.weights
    for _ in range(s):
        w = (bd.weights[:, None, :] + w[None, :, :]).reshape(-1, w.shape[1])
    return w


def chain_degrees(bd: BarData, M: Module, s: int, L: int) -> np.ndarray:
    d = M.space.degrees
    for _ in range(s):
        d = ((bd.degrees[:, None] + d[None, :]) % L).reshape(-1)
    return d


def bar_complex(A: GradedAlgebra, M: Module, s_top: int):
    """Differentials d_1..d_{s_top} of the normalized bar complex (for inspection and tests)."""
    bd = bar_data(A, M)
    return [bar_differential(bd, M.rank, s, A.p) for s in range(1, s_top + 1)]


def tor_bar(A: GradedAlgebra, M: Module, s_max: int = 2, budget: int = None) -> TorTable:
    """Ranks and degree multisets of Tor^A_s(R, M) for 0 <= s <= s_max."""
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    budget = tor_budget() if budget is None else budget
    bd = bar_data(A, M)
    p, L, rm = A.p, A.ctx.period, M.rank
    biggest = bd.rank ** (s_max + 1) * rm
    if biggest > budget:
        raise BudgetExceeded(f"bar complex needs a chain group of rank {biggest} > budget {budget}")
    moduli = A.weight_moduli
    keys = [weight_keys(chain_weights(bd, M, s), moduli) for s in range(s_max + 2)]
    allkeys = np.vstack(keys)
    if allkeys.shape[0]:
        _, ids = np.unique(allkeys, axis=0, return_inverse=True)
        ids = np.asarray(ids).reshape(-1)
    else:
        ids = np.zeros(0, dtype=np.int64)
    offs = np.cumsum([0] + [k.shape[0] for k in keys])
    strat = [ids[offs[s]:offs[s + 1]] for s in range(s_max + 2)]

    def groups(s):
        order = np.argsort(strat[s], kind="stable")
        uniq, starts = np.unique(strat[s][order], return_index=True)
        return {int(u): chunk for u, chunk in zip(uniq, np.split(order, starts[1:]))}

    grp = [groups(s) for s in range(s_max + 2)]
    # ranks[s][stratum] = rank of d_s on that stratum
    ranks = [dict() for _ in range(s_max + 2)]
    for s in range(1, s_max + 2):
        d = bar_differential(bd, rm, s, p).tocsc()
        for sid, cols in grp[s].items():
            rows = grp[s - 1].get(sid)
            if rows is None or len(rows) == 0:
                ranks[s][sid] = 0
                continue
            block = d[:, cols].tocsr()[rows, :]
            stop = None
            if s == s_max + 1:
                stop = len(rows) - ranks[s - 1].get(sid, 0)
            ranks[s][sid] = column_rank(block, p, stop_at=stop)
    out = []
    for s in range(s_max + 1):
        degs = []
        total = 0
        degrees_s = None
        for sid, members in grp[s].items():
            h = len(members) - ranks[s].get(sid, 0) - ranks[s + 1].get(sid, 0)
            if h:
                if degrees_s is None:
                    degrees_s = chain_degrees(bd, M, s, L)
                degs += [int(degrees_s[members[0]])] * h
                total += h
        out.append(TorRow(s, total, tuple(sorted(degs))))
    return TorTable(s_max, tuple(out))


__all__ = ["TorTable", "TorRow", "tor_bar", "bar_complex", "bar_data", "bar_differential",
           "DEFAULT_TOR_BUDGET"]
