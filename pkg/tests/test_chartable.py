import numpy as np
import pytest
from hypothesis import given, strategies as st

from isaacs import chartable as ct
from isaacs import group as gp
from isaacs.arith import is_prime
from isaacs.constructions import (
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    extraspecial_p3,
    heisenberg,
    quaternion8,
    symmetric,
)


def groups():
    return [
        cyclic(1),
        cyclic(7),
        dihedral(6),
        dihedral(8),
        quaternion8(),
        dicyclic(12),
        alternating(4),
        symmetric(4),
        alternating(5),
        extraspecial_p3(3, 3),
        extraspecial_p3(3, 9),
        heisenberg(4),
        direct_product(cyclic(4), cyclic(6)),
        symmetric(5),
    ]


GROUPS = groups()


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_orthogonality(G):
    T = ct.character_table(G)
    rep = ct.check_table(T)
    assert rep, rep
    assert len(T) == len(gp.conjugacy_classes(G))
    # independent floating-point check of the column relations
    X = T.complex_values()
    cols = X.conj().T @ X
    assert np.allclose(cols, np.diag(G.order / T.sizes), atol=1e-8)
    assert T.degrees[0] == 1 and np.all(np.abs(X[0] - 1) < 1e-9)


def test_dixon_prime_is_least():
    for order, exp in [(8, 4), (24, 12), (60, 30), (375000, 60), (1, 1)]:
        l = ct.dixon_prime(order, exp)
        assert is_prime(l) and l % exp == 1 % exp and l * l > 4 * order
        assert not any(
            is_prime(k) and k % exp == 1 % exp and k * k > 4 * order for k in range(2, l)
        )


@pytest.mark.parametrize(
    "G, expect",
    [
        (dihedral(6), "[<1,2>,<2,1>]"),
        (symmetric(4), "[<1,2>,<2,1>,<3,2>]"),
        (alternating(5), "[<1,1>,<3,2>,<4,1>,<5,1>]"),
        (symmetric(5), "[<1,2>,<4,2>,<5,2>,<6,1>]"),
        (quaternion8(), "[<1,4>,<2,1>]"),
        (dihedral(8), "[<1,4>,<2,1>]"),
        (heisenberg(4), "[<1,16>,<4,3>]"),
        (extraspecial_p3(3, 3), "[<1,9>,<3,2>]"),
    ],
    ids=lambda x: getattr(x, "name", x),
)
def test_degree_multisets(G, expect):
    assert ct.format_multiset(ct.degree_multiset(G)) == expect


def test_a5_golden_ratio():
    T = ct.character_table(alternating(5))
    X = T.complex_values()
    phi = (1 + 5**0.5) / 2
    threes = X[T.degrees == 3]
    vals = threes[:, T.element_orders == 5].real.ravel()
    assert np.any(np.isclose(vals, phi)) and np.any(np.isclose(vals, 1 - phi))


def sorted_rows(R):
    return sorted(tuple(r.ravel().tolist()) for r in R)


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_abelian_table_matches_dual(ns):
    G = cyclic(ns[0])
    for n in ns[1:]:
        G = direct_product(G, cyclic(n))
    T = ct.character_table(G)
    from isaacs import cyclotomic as cy

    ours = cy.reduce(T.on_elements(), T.m)
    assert sorted_rows(ours) == sorted_rows(ct.abelian_dual_table(G))


CAMINA_GROUPS = [
    dihedral(8), quaternion8(), symmetric(4), alternating(4), dihedral(10),
    extraspecial_p3(3, 3), extraspecial_p3(3, 9), heisenberg(4), dicyclic(12),
]


@pytest.mark.parametrize("G", CAMINA_GROUPS, ids=lambda G: G.name)
def test_camina_criteria_agree(G):
    for N in gp.normal_subgroup_lattice(G):
        if N.order in (1, G.order):
            assert not ct.is_camina_pair(G, N)
            continue
        assert ct.camina_by_classes(G, N) == ct.camina_by_characters(G, N)


def test_camina_examples():
    D8 = dihedral(8)
    assert ct.is_camina_pair(D8, gp.center(D8))
    S4 = symmetric(4)
    V = gp.minimal_normal_subgroups(S4)[0]
    A4 = gp.derived_subgroup(S4)
    # a transposition coset of V4 also contains 4-cycles
    assert not ct.is_camina_pair(S4, V)
    assert not ct.is_camina_pair(S4, A4)
    assert ct.is_camina_pair(alternating(4), gp.minimal_normal_subgroups(alternating(4))[0])
    # Frobenius kernels give Camina pairs
    D10 = dihedral(10)
    assert ct.is_camina_pair(D10, gp.derived_subgroup(D10))
    with pytest.raises(ValueError):
        ct.is_camina_pair(D8, gp.generated_subgroup(D8, [4]))


def test_gagola_characters():
    assert [d for _, d in ct.gagola_characters(dihedral(8))] == [2]
    assert [d for _, d in ct.gagola_characters(heisenberg(4))] == []
    # S3: the degree-2 character is 2, 0, -1
    assert ct.gagola_characters(symmetric(3)) == [(2, 2)]
    assert ct.gagola_characters(symmetric(4)) == []


def test_irr_over_and_kernels():
    D8 = dihedral(8)
    Z = gp.center(D8)
    rows = ct.irr_over(D8, Z)
    assert [int(ct.character_table(D8).degrees[i]) for i in rows] == [2]
    assert ct.kernel_of(D8, rows[0]).order == 1
    assert ct.irr_over(D8, D8.trivial) == []


def test_fully_ramified():
    D8 = dihedral(8)
    Z = gp.center(D8)
    r = ct.is_fully_ramified(D8, Z, 1)
    assert r and r.multiplicity == 2
    assert not ct.is_fully_ramified(D8, Z, 0)
    P = heisenberg(4)
    Z = gp.center(P)
    for lam in (1, 2, 3):
        r = ct.is_fully_ramified(P, Z, lam)
        assert r and r.multiplicity == 4
    # a non-invariant character of a normal subgroup
    S4 = symmetric(4)
    V = gp.minimal_normal_subgroups(S4)[0]
    assert ct.is_fully_ramified(S4, V, 1).reason == "not invariant"


def test_special_predicates():
    for G in (dihedral(8), quaternion8(), extraspecial_p3(3, 3), extraspecial_p3(3, 9)):
        assert ct.is_extraspecial(G)
        assert ct.is_semi_extraspecial(G)
    P = heisenberg(4)
    assert not ct.is_extraspecial(P)
    assert ct.is_semi_extraspecial(P) and ct.is_ultraspecial(P)
    assert not ct.is_extraspecial(elementary_abelian(2, 3))
    assert not ct.is_semi_extraspecial(elementary_abelian(2, 3))
    assert ct.is_ultraspecial(dihedral(8))
    with pytest.raises(ValueError):
        ct.is_extraspecial(symmetric(3))


def test_isoclinism():
    assert ct.is_isoclinic(extraspecial_p3(3, 3), extraspecial_p3(3, 9))
    assert ct.is_isoclinic(dihedral(8), quaternion8())
    assert not ct.is_isoclinic(dihedral(8), elementary_abelian(2, 3))
    assert not ct.is_isoclinic(symmetric(3), dihedral(8))
    # abelian groups are all isoclinic to each other
    assert ct.is_isoclinic(cyclic(4), elementary_abelian(3, 2))
