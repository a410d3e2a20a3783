import numpy as np
import pytest

from isaacs import constructions as cn
from isaacs import group as gp
from isaacs.chartable import degree_multiset, is_camina_pair
from isaacs.fields import GF
from isaacs.iso import is_isomorphic


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_field_axioms(q):
    F = GF(q)
    a = np.arange(q)
    assert np.array_equal(F.add[a, F.neg], np.zeros(q))
    nz = a[1:]
    assert np.all(F.mul[nz, F.inv[nz]] == 1)
    # distributivity and associativity on every triple
    lhs = F.mul[a[:, None, None], F.add[a[None, :, None], a[None, None, :]]]
    rhs = F.add[F.mul[a[:, None, None], a[None, :, None]], F.mul[a[:, None, None], a[None, None, :]]]
    assert np.array_equal(lhs, rhs)
    assoc_l = F.mul[F.mul[a[:, None, None], a[None, :, None]], a[None, None, :]]
    assoc_r = F.mul[a[:, None, None], F.mul[a[None, :, None], a[None, None, :]]]
    assert np.array_equal(assoc_l, assoc_r)
    assert len(set(F.exp.tolist())) == q - 1
    fr = F.frobenius(1)
    assert np.array_equal(fr[F.mul[a[:, None], a[None, :]]], F.mul[fr[a][:, None], fr[a][None, :]])


def test_orders_and_names():
    assert cn.cyclic(12).order == 12
    assert cn.elementary_abelian(3, 3).order == 27
    assert cn.dihedral(10).order == 10
    assert cn.dicyclic(12).order == 12
    assert cn.heisenberg(8).order == 512
    assert cn.symmetric(4).order == 24 and cn.alternating(5).order == 60
    for p in (3, 5, 7):
        for e in (p, p * p):
            P = cn.extraspecial_p3(p, e)
            assert P.order == p**3 and gp.exponent(P) == e
            assert gp.center(P).order == p
    with pytest.raises(ValueError):
        cn.extraspecial_p3(2)
    with pytest.raises(ValueError):
        cn.extraspecial_p3(3, 27)
    with pytest.raises(ValueError):
        cn.dihedral(7)
    with pytest.raises(ValueError):
        cn.heisenberg(32)
    with pytest.raises(ValueError):
        GF(6)


def test_heisenberg_structure():
    for q in (3, 4, 5, 8, 9):
        P = cn.heisenberg(q)
        assert gp.center(P).order == q
        assert gp.derived_subgroup(P) == gp.center(P)
        assert degree_multiset(P) == [(1, q * q), (q, q - 1)]


def test_semidirect_gives_s3():
    V, H = cn.cyclic(3), cn.cyclic(2)
    spec = cn.ActionSpec(H, V, {1: np.array([0, 2, 1])})
    sd = cn.semidirect_product(spec)
    assert sd.group.order == 6
    assert is_isomorphic(sd.group, cn.symmetric(3))
    assert gp.is_normal(sd.group, sd.normal)
    assert sd.complement.order == 2 and sd.complement.is_closed()


def test_action_errors():
    V, H = cn.cyclic(3), cn.cyclic(2)
    with pytest.raises(cn.ActionError, match="not an automorphism"):
        cn.ActionSpec(H, V, {1: np.array([0, 1, 1])}).action_table()
    # a generator of order 2 acting by an automorphism of order 4
    V5 = cn.cyclic(5)
    with pytest.raises(cn.ActionError, match="relation violated"):
        cn.ActionSpec(H, V5, {1: np.array([0, 2, 4, 1, 3])}).action_table()
    H4 = cn.cyclic(4)
    with pytest.raises(cn.ActionError, match="do not generate"):
        cn.ActionSpec(H4, V, {2: np.array([0, 2, 1])}).action_table()


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_agl1_is_two_transitive_frobenius(q):
    V, H, act = cn.field_multiplication_action(q)
    assert cn.two_transitive_frobenius_check(V, H, act)
    G = cn.field_frobenius_group(q)
    assert G.order == q * (q - 1)
    # the translation subgroup is the Frobenius kernel, and (G, K) is a Camina pair
    K = gp.derived_subgroup(G)
    assert K.order == q and is_camina_pair(G, K)


def test_frobenius_check_failures():
    V, H, act = cn.field_multiplication_action(7)
    ident = [np.arange(7)] * 6
    chk = cn.two_transitive_frobenius_check(V, H, ident)
    assert chk.homomorphism and not chk.fixed_point_free and not chk.transitive
    # squares only: homomorphism from C6, not fixed-point-free
    sq = [act[(2 * k) % 6] for k in range(6)]
    chk = cn.two_transitive_frobenius_check(V, H, sq)
    assert chk.homomorphism and not chk.fixed_point_free and not chk


@pytest.mark.parametrize("p, order", [(11, 120), (29, 840), (59, 3480)])
def test_sl25_complements(p, order):
    C = cn.sl25_complement(p)
    assert C.order == order == p * p - 1
    assert C.certified
    assert C.scalar_order == cn.SL25_SCALAR[p]
    acts = cn.matrix_action_on_vectors(C.elements[:5], p)
    assert all(len(np.unique(a)) == p * p for a in acts)


def test_sl25_is_binary_icosahedral():
    C = cn.sl25_complement(11)
    G = cn.matrix_group_as_cayley(C.elements, 11)
    assert gp.is_perfect(G) and gp.center(G).order == 2
    assert degree_multiset(G) == [(1, 1), (2, 2), (3, 2), (4, 2), (5, 1), (6, 1)]
    with pytest.raises(ValueError):
        cn.sl25_complement(7)


def test_permutation_closure():
    gens = [[1, 2, 0], [1, 0, 2]]
    assert len(cn.permutation_closure(gens)) == 6
    with pytest.raises(ValueError):
        cn.permutation_closure([list(range(1, 8)) + [0], [1, 0] + list(range(2, 8))], limit=100)
