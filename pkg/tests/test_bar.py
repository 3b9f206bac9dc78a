import numpy as np
import pytest

from kndegree.algebra import (GradedAlgebra, Generator, Presentation, cyclic_group_algebra, dual_module,
                              from_presentation, kunneth, module_indecomposables, regular_module,
                              trivial_module)
from kndegree.bar import bar_complex, tor_bar
from kndegree.errors import BudgetExceeded
from kndegree.linalg import CoefficientContext, make_space


def exterior_algebra(ctx):
    V = make_space(ctx, [("1", 0), ("e", 1)])
    return GradedAlgebra(V, ([0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 1, 1]), [1, 0], [1, 0], commutative=True)


def truncated(p, n, deg, t):
    return from_presentation(CoefficientContext(p, n), Presentation([Generator("a", deg, t)]))


def truncated_tor_oracle(deg, t, s, L):
    """Minimal periodic resolution of R over R[a]/(a^t): one class per s."""
    k, odd = divmod(s, 2)
    return ((k * t * deg + odd * deg) % L,)


CASES = [
    lambda: (truncated(2, 2, 4, 4), "trivial"),
    lambda: (truncated(3, 1, 2, 3), "dual"),
    lambda: (cyclic_group_algebra(CoefficientContext(3, 1), 3), "trivial"),
    lambda: (exterior_algebra(CoefficientContext(3, 1)), "trivial"),
    lambda: (exterior_algebra(CoefficientContext(3, 1)), "dual"),
    lambda: (kunneth(exterior_algebra(CoefficientContext(3, 1)), exterior_algebra(CoefficientContext(3, 1))),
             "trivial"),
]


@pytest.mark.parametrize("case", CASES)
def test_bar_differential_squares_to_zero(case):
    A, kind = case()
    M = trivial_module(A) if kind == "trivial" else dual_module(A)
    ds = bar_complex(A, M, 4)
    for lower, upper in zip(ds, ds[1:]):
        prod = (lower @ upper).tocoo()
        assert not np.any(prod.data % A.p)


@pytest.mark.parametrize("p,n,deg,t", [(2, 2, 4, 4), (3, 1, 2, 9), (5, 1, 2, 5), (2, 3, 4, 2)])
def test_truncated_tor_with_trivial_module(p, n, deg, t):
    A = truncated(p, n, deg, t)
    L = A.ctx.period
    tor = tor_bar(A, trivial_module(A), s_max=3)
    for row in tor.rows:
        assert row.rank == 1
        assert row.degrees == truncated_tor_oracle(deg, t, row.s, L)


def test_group_algebra_tor_is_periodic():
    G = cyclic_group_algebra(CoefficientContext(3, 1), 3)
    tor = tor_bar(G, trivial_module(G), s_max=3)
    assert [r.rank for r in tor.rows] == [1, 1, 1, 1]


def test_exterior_tor_with_trivial_module():
    # Tor over Lambda(e) is a divided power algebra on a class of degree |e|
    E = exterior_algebra(CoefficientContext(3, 1))
    tor = tor_bar(E, trivial_module(E), s_max=3)
    assert [r.rank for r in tor.rows] == [1, 1, 1, 1]
    assert [r.degrees for r in tor.rows] == [(0,), (1,), (2,), (3,)]


@pytest.mark.parametrize("A", [truncated(2, 2, 4, 4), cyclic_group_algebra(CoefficientContext(5, 1), 4),
                               truncated(3, 2, 8, 9)])
def test_free_module_has_no_higher_tor(A):
    tor = tor_bar(A, regular_module(A), s_max=2)
    assert tor.rows[0].rank == 1 and tor.rows[0].degrees == (0,)
    assert tor.vanishes_above_zero()


@pytest.mark.parametrize("A", [truncated(2, 2, 4, 4), truncated(3, 1, 2, 9),
                               cyclic_group_algebra(CoefficientContext(2, 1), 6)])
def test_row_zero_matches_indecomposables(A):
    for M in (dual_module(A), trivial_module(A), regular_module(A)):
        Q = module_indecomposables(A, M)
        tor = tor_bar(A, M, s_max=0)
        assert tor.rows[0].rank == Q.rank
        assert sorted(tor.rows[0].degrees) == sorted(int(d) for d in Q.space.degrees)


def test_budget():
    A = truncated(3, 1, 2, 9)
    with pytest.raises(BudgetExceeded):
        tor_bar(A, dual_module(A), s_max=2, budget=100)
    assert tor_bar(A, dual_module(A), s_max=0, budget=100).rows[0].rank == 1


def test_budget_from_environment(monkeypatch):
    A = truncated(3, 1, 2, 9)
    monkeypatch.setenv("MORAVA_TOR_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        tor_bar(A, dual_module(A), s_max=1)


def test_tor_json():
    A = truncated(2, 2, 4, 4)
    doc = tor_bar(A, trivial_module(A), s_max=1).to_json()
    assert doc == [{"s": 0, "rank": 1, "degrees": [0]}, {"s": 1, "rank": 1, "degrees": [4]}]
