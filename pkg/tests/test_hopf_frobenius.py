import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kndegree.algebra import (GradedAlgebra, Generator, Presentation, cyclic_group_algebra, dual_module,
                              from_presentation, group_algebra, unit_algebra)
from kndegree.errors import AxiomError, NotFrobenius
from kndegree.frobenius import bilinear_form, frobenius_certificate
from kndegree.hopf import attach_hopf, check_hopf, dual_hopf, group_coproduct, group_hopf
from kndegree.linalg import CoefficientContext, make_space, rank_mod_p


def dense_products(A):
    T = np.zeros((A.rank,) * 3, dtype=np.int64)
    i, j, k, c = A.products
    T[i, j, k] = c
    return T


@pytest.mark.parametrize("p,m", [(2, 1), (2, 4), (3, 3), (3, 6), (5, 5), (5, 12)])
def test_group_hopf_axioms(p, m):
    H = group_hopf(cyclic_group_algebra(CoefficientContext(p, 1), m))
    assert H.is_cocommutative()


def test_klein_four_hopf():
    table = [[a ^ b for b in range(4)] for a in range(4)]
    group_hopf(group_algebra(CoefficientContext(2, 1), table))


def test_identity_antipode_fails_on_z3():
    G = cyclic_group_algebra(CoefficientContext(3, 1), 3)
    psi, _ = group_coproduct(G)
    with pytest.raises(AxiomError) as err:
        check_hopf(G, psi, np.eye(3, dtype=np.int64))
    assert "conjugation" in err.value.axiom or "anti" in err.value.axiom


def test_unit_algebra_hopf():
    R = unit_algebra(CoefficientContext(3, 2))
    H = attach_hopf(R, [[1]], [[1]])
    assert dual_hopf(H).algebra.rank == 1


def test_dual_of_z2_is_functions():
    H = group_hopf(cyclic_group_algebra(CoefficientContext(3, 1), 2))
    D = dual_hopf(H)
    A = D.algebra
    # delta_g * delta_h = [g == h] delta_g
    for g in range(2):
        for h in range(2):
            prod = A.multiply(A.basis_vector(g), A.basis_vector(h))
            want = A.basis_vector(g) if g == h else np.zeros(2, dtype=np.int64)
            assert np.array_equal(prod, want)
    assert A.unit.tolist() == [1, 1]


@pytest.mark.parametrize("p,m", [(2, 3), (3, 4), (5, 2)])
def test_dual_hopf_is_involution(p, m):
    H = group_hopf(cyclic_group_algebra(CoefficientContext(p, 1), m))
    DD = dual_hopf(dual_hopf(H))
    assert np.array_equal(dense_products(DD.algebra), dense_products(H.algebra))
    assert np.array_equal(DD.coproduct, H.coproduct)
    assert np.array_equal(DD.antipode, H.antipode)


def test_truncated_frobenius_certificate():
    A = from_presentation(CoefficientContext(2, 2), Presentation([Generator("a", 4, 4)]))
    cert = frobenius_certificate(A)
    assert cert.xi.tolist() == [0, 0, 0, 1]
    assert np.array_equal(cert.form, np.fliplr(np.eye(4, dtype=np.int64)))
    assert cert.nondegenerate
    assert cert.degree.value == 0 and cert.degree.lift == 12
    assert cert.method == "annihilator"


@pytest.mark.parametrize("p,m", [(2, 2), (3, 5), (5, 10)])
def test_group_frobenius_form_is_permutation(p, m):
    G = cyclic_group_algebra(CoefficientContext(p, 1), m)
    cert = frobenius_certificate(G)
    assert cert.degree.value == 0
    assert np.all(cert.form.sum(axis=0) == 1) and np.all(cert.form.sum(axis=1) == 1)


def test_rank_one_frobenius():
    cert = frobenius_certificate(unit_algebra(CoefficientContext(5, 1)))
    assert cert.xi.tolist() == [1]


@pytest.mark.parametrize("build", [
    lambda: from_presentation(CoefficientContext(3, 2), Presentation([Generator("a", 8, 3, ((-1, 1),))])),
    lambda: from_presentation(CoefficientContext(2, 3), Presentation([Generator("x", 4, 2), Generator("y", 8, 4)])),
    lambda: cyclic_group_algebra(CoefficientContext(3, 1), 6),
])
def test_dual_module_is_free_on_xi(build):
    A = build()
    cert = frobenius_certificate(A)
    D = dual_module(A)
    # a -> a . xi must be a bijection A -> A*
    orbit = np.column_stack([D.act_matrix(A.basis_vector(a)) @ cert.xi % A.p for a in range(A.rank)])
    assert rank_mod_p(orbit, A.p) == A.rank
    assert np.array_equal(orbit % A.p, cert.isomorphism.matrix)


def test_square_zero_algebra_is_not_frobenius():
    # F_2[x, y]/(x, y)^2: the socle has rank 2
    ctx = CoefficientContext(2, 2)
    V = make_space(ctx, [("1", 0), ("x", 2), ("y", 2)])
    products = ([0, 0, 0, 1, 2], [0, 1, 2, 0, 0], [0, 1, 2, 1, 2], [1, 1, 1, 1, 1])
    A = GradedAlgebra(V, products, [1, 0, 0], [1, 0, 0], commutative=True)
    with pytest.raises(NotFrobenius):
        frobenius_certificate(A)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 8), st.data())
def test_form_matches_direct_products(p, m, data):
    G = cyclic_group_algebra(CoefficientContext(p, 1), m)
    xi = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m)))
    form = bilinear_form(G, xi)
    for a in range(m):
        for b in range(m):
            assert form[a, b] == (xi @ G.multiply(G.basis_vector(a), G.basis_vector(b))) % p
