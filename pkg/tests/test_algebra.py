import itertools

import numpy as np
import pytest

from kndegree.algebra import (GradedAlgebra, Generator, Module, Presentation, augmentation_ideal,
                              check_group_table, cyclic_group_algebra, dual_module, from_presentation,
                              group_algebra, kunneth, left_annihilator, module_indecomposables,
                              regular_module, trivial_module, unit_algebra)
from kndegree.errors import AxiomError, NotAGroup, PresentationError
from kndegree.linalg import CoefficientContext, make_space


def poly_mult_oracle(e1, e2, truncations, relations, p):
    """Multiply two monomials in a truncated polynomial ring by repeated rewriting.

    Returns {exponent tuple: coefficient}.
    """
    terms = {tuple(a + b for a, b in zip(e1, e2)): 1}
    changed = True
    while changed:
        changed = False
        out = {}
        for e, c in terms.items():
            g = next((i for i, (x, t) in enumerate(zip(e, truncations)) if x >= t), None)
            if g is None:
                out[e] = (out.get(e, 0) + c) % p
                continue
            changed = True
            for coeff, k in relations[g]:
                e2_ = list(e)
                e2_[g] = e[g] - truncations[g] + k
                out[tuple(e2_)] = (out.get(tuple(e2_), 0) + c * coeff) % p
        terms = {e: c for e, c in out.items() if c}
    return terms


def dense_products(A):
    r = A.rank
    T = np.zeros((r, r, r), dtype=np.int64)
    i, j, k, c = A.products
    T[i, j, k] = c
    return T


def exterior_algebra(ctx):
    """Lambda(e) with |e| = 1: a graded-commutative algebra with an odd generator."""
    V = make_space(ctx, [("1", 0), ("e", 1)])
    products = ([0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 1, 1])
    return GradedAlgebra(V, products, [1, 0], [1, 0], commutative=True, name="Lambda(e)")


PRESENTATIONS = [
    (2, 2, [Generator("a", 4, 4)]),
    (3, 2, [Generator("a", 8, 3, ((-1, 1),))]),
    (2, 3, [Generator("x", 4, 2), Generator("y", 8, 4)]),
    (3, 1, [Generator("a", 2, 9)]),
    (5, 1, [Generator("a", 8, 5, ((1, 1),)), Generator("b", 4, 2)]),
]


@pytest.mark.parametrize("p,n,gens", PRESENTATIONS)
def test_presentation_products_match_rewriting_oracle(p, n, gens):
    ctx = CoefficientContext(p, n)
    A = from_presentation(ctx, Presentation(gens))
    truncs = [g.truncation for g in gens]
    rels = [g.relation for g in gens]
    assert A.rank == int(np.prod(truncs))
    index = {tuple(e): t for t, e in enumerate(A.exponents.tolist())}
    T = dense_products(A)
    for a, b in itertools.product(range(A.rank), repeat=2):
        want = np.zeros(A.rank, dtype=np.int64)
        for e, c in poly_mult_oracle(A.exponents[a], A.exponents[b], truncs, rels, p).items():
            want[index[e]] = c
        assert np.array_equal(T[a, b], want), (a, b)


def test_truncated_f2():
    A = from_presentation(CoefficientContext(2, 2), Presentation([Generator("a", 4, 4)]))
    assert A.rank == 4
    assert A.space.degrees.tolist() == [0, 4, 2, 0]
    assert A.labels == ("1", "a", "a^2", "a^3")


def test_cubic_relation_at_three():
    A = from_presentation(CoefficientContext(3, 2), Presentation([Generator("a", 8, 3, ((-1, 1),))]))
    a = A.basis_vector(1)
    a3 = A.multiply(A.multiply(a, a), a)
    assert np.array_equal(a3, (2 * a) % 3)


def test_empty_presentation_is_unit_algebra():
    A = from_presentation(CoefficientContext(3, 1), Presentation(()))
    assert A.rank == 1
    assert A.unit.tolist() == [1]


@pytest.mark.parametrize("gen", [
    Generator("a", 4, 0),
    Generator("a", 3, 2),                    # odd degree
    Generator("a", 4, 3, ((1, 3),)),         # rhs exponent not below truncation
    Generator("a", 4, 3, ((1, 1),)),         # inhomogeneous relation
])
def test_bad_presentations(gen):
    with pytest.raises(PresentationError):
        from_presentation(CoefficientContext(2, 2), Presentation([gen]))


def test_unit_algebra():
    R = unit_algebra(CoefficientContext(5, 2))
    assert R.rank == 1
    assert R.check()
    assert augmentation_ideal(R).rank == 0


def test_group_algebras():
    ctx = CoefficientContext(3, 1)
    assert cyclic_group_algebra(ctx, 1).rank == 1
    G2 = cyclic_group_algebra(ctx, 2)
    g = G2.basis_vector(1)
    assert np.array_equal(G2.multiply(g, g), G2.unit)
    G3 = cyclic_group_algebra(ctx, 3)
    I = augmentation_ideal(G3)
    assert I.rank == 2
    # the augmentation ideal is nilpotent (I^3 = 0), so it is the Jacobson radical
    for x, y, z in itertools.product(range(2), repeat=3):
        xyz = G3.multiply(G3.multiply(I.basis[:, x], I.basis[:, y]), I.basis[:, z])
        assert not xyz.any()


def test_non_group_table_rejected():
    with pytest.raises(NotAGroup):
        check_group_table([[0, 1], [1, 1]])
    with pytest.raises(NotAGroup):
        group_algebra(CoefficientContext(2, 1), [[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_noncyclic_group_table():
    # Klein four group at p=2
    table = [[a ^ b for b in range(4)] for a in range(4)]
    A = group_algebra(CoefficientContext(2, 1), table)
    assert A.rank == 4
    assert A.check()


def test_exterior_algebra_is_graded_commutative():
    for p in (2, 3):
        E = exterior_algebra(CoefficientContext(p, 1))
        assert E.check()


def test_corrupted_constant_fails_associativity():
    A = from_presentation(CoefficientContext(3, 1), Presentation([Generator("a", 2, 9)]))
    with pytest.raises(AxiomError) as err:
        A.with_corrupted_constant().check()
    assert err.value.axiom == "associativity"


def test_kunneth_matches_two_generator_presentation():
    ctx = CoefficientContext(2, 3)
    A = from_presentation(ctx, Presentation([Generator("x", 4, 2)]))
    B = from_presentation(ctx, Presentation([Generator("y", 8, 4)]))
    AB = kunneth(A, B)
    C = from_presentation(ctx, Presentation([Generator("x", 4, 2), Generator("y", 8, 4)]))
    # relabel the pair basis by exponent vectors
    perm = []
    index = {tuple(e): t for t, e in enumerate(C.exponents.tolist())}
    for a in range(A.rank):
        for b in range(B.rank):
            perm.append(index[(int(A.exponents[a, 0]), int(B.exponents[b, 0]))])
    perm = np.array(perm)
    T, U = dense_products(AB), dense_products(C)
    assert np.array_equal(T, U[np.ix_(perm, perm, perm)])
    assert np.array_equal(AB.space.degrees, C.space.degrees[perm])


def test_kunneth_of_odd_generators_anticommutes():
    ctx = CoefficientContext(3, 1)
    E = exterior_algebra(ctx)
    EE = kunneth(E, E)
    e1 = EE.basis_vector(EE.space.index(("e", "1")))
    e2 = EE.basis_vector(EE.space.index(("1", "e")))
    assert np.array_equal(EE.multiply(e1, e2), (-EE.multiply(e2, e1)) % 3)
    assert EE.multiply(e1, e2).any()


def test_kunneth_with_unit_algebra():
    ctx = CoefficientContext(2, 2)
    A = from_presentation(ctx, Presentation([Generator("a", 4, 4)]))
    AR = kunneth(A, unit_algebra(ctx))
    assert np.array_equal(dense_products(AR), dense_products(A))


def test_augmentation_ideal_examples():
    A = from_presentation(CoefficientContext(3, 1), Presentation([Generator("a", 2, 9)]))
    I = augmentation_ideal(A)
    assert I.rank == 8
    assert not I.basis[0].any()
    assert I.is_closed()
    G = cyclic_group_algebra(CoefficientContext(3, 1), 2)
    J = augmentation_ideal(G)
    assert J.rank == 1
    v = G.normalize(J.basis[:, 0])
    assert v.tolist() == [2, 1]   # g - 1


def annihilator_oracle(A, gens):
    """All x with x * y = 0 for every y in gens, by enumeration of F_p^rank."""
    out = []
    for coeffs in itertools.product(range(A.p), repeat=A.rank):
        x = np.array(coeffs, dtype=np.int64)
        if all(not A.multiply(x, y).any() for y in gens):
            out.append(x)
    return out


@pytest.mark.parametrize("build", [
    lambda: from_presentation(CoefficientContext(2, 2), Presentation([Generator("a", 4, 4)])),
    lambda: from_presentation(CoefficientContext(3, 2), Presentation([Generator("a", 8, 3, ((-1, 1),))])),
    lambda: cyclic_group_algebra(CoefficientContext(2, 1), 4),
    lambda: cyclic_group_algebra(CoefficientContext(3, 1), 3),
])
def test_annihilator_against_enumeration(build):
    A = build()
    I = augmentation_ideal(A)
    ann = left_annihilator(A, I)
    brute = annihilator_oracle(A, [I.basis[:, c] for c in range(I.rank)])
    assert A.p ** ann.rank == len(brute)
    assert ann.rank == 1


def test_annihilator_of_zero_ideal_is_everything():
    A = from_presentation(CoefficientContext(2, 2), Presentation([Generator("a", 4, 4)]))
    zero = np.zeros((A.rank, 0), dtype=np.int64)
    assert left_annihilator(A, zero).rank == A.rank


def test_annihilator_of_a_in_truncated():
    A = from_presentation(CoefficientContext(2, 2), Presentation([Generator("a", 4, 4)]))
    ann = left_annihilator(A, A.basis_vector(1).reshape(-1, 1))
    assert ann.rank == 1
    assert ann.basis[:, 0].tolist() == [0, 0, 0, 1]


def test_group_annihilator_is_norm():
    G = cyclic_group_algebra(CoefficientContext(5, 1), 7)
    ann = left_annihilator(G, augmentation_ideal(G))
    assert G.normalize(ann.basis[:, 0]).tolist() == [1] * 7


def test_module_axioms():
    A = from_presentation(CoefficientContext(3, 1), Presentation([Generator("a", 2, 9)]))
    assert regular_module(A).check()
    assert dual_module(A).check()
    assert trivial_module(A).check()


def test_indecomposables():
    ctx = CoefficientContext(2, 2)
    A = from_presentation(ctx, Presentation([Generator("a", 4, 4)]))
    Q = module_indecomposables(A, regular_module(A))
    assert Q.rank == 1
    assert Q.section[:, 0].tolist() == [1, 0, 0, 0]
    Qd = module_indecomposables(A, dual_module(A))
    assert Qd.rank == 1
    assert Qd.space.degree(0).value == 0
    assert Qd.space.degree(0).lift == -12
    empty = Module(A, make_space(ctx, []), ([], [], [], []), weights=np.zeros((0, A.weights.shape[1])))
    assert module_indecomposables(A, empty).rank == 0
