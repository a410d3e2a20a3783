import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isaacs import group as gp
from isaacs.constructions import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    extraspecial_p3,
    heisenberg,
    quaternion8,
    symmetric,
)
from isaacs.group import CayleyGroup, GroupFormatError


def small_groups():
    return [
        dihedral(6),
        dihedral(8),
        quaternion8(),
        alternating(4),
        symmetric(4),
        extraspecial_p3(3, 3),
        extraspecial_p3(3, 9),
        heisenberg(4),
        elementary_abelian(2, 3),
    ]


# brute-force oracles working directly on the multiplication table


def brute_inverse(G, g):
    return next(h for h in range(G.order) if G.mul[g, h] == 0)


def brute_classes(G):
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        c = {int(G.mul[G.mul[x, g], brute_inverse(G, x)]) for x in range(G.order)}
        seen |= c
        out.append(frozenset(c))
    return set(out)


def brute_closure(G, gens):
    S = {0}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = int(G.mul[x, s])
                if y not in S:
                    S.add(y)
                    new.append(y)
        frontier = new
    return frozenset(S)


def brute_subgroups(G, rank=3):
    subs = set()
    for k in range(rank + 1):
        for gens in itertools.combinations(range(1, G.order), k):
            subs.add(brute_closure(G, gens))
    return subs


def brute_normal(G):
    out = set()
    for S in brute_subgroups(G):
        if all(int(G.mul[G.mul[x, s], brute_inverse(G, x)]) in S for s in S for x in range(G.order)):
            out.add(S)
    return out


GROUPS = small_groups()
IDS = [G.name for G in GROUPS]


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_classes_match_brute_force(G):
    got = {frozenset(map(int, c)) for c in gp.conjugacy_classes(G)}
    assert got == brute_classes(G)
    assert gp.conjugacy_classes(G)[0].tolist() == [0]


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_center_and_inverse(G):
    Z = {z for z in range(G.order) if all(G.mul[z, x] == G.mul[x, z] for x in range(G.order))}
    assert set(gp.center(G).elements.tolist()) == Z
    assert all(G.mul[g, G.inv[g]] == 0 for g in range(G.order))


@pytest.mark.parametrize("G", [G for G in GROUPS if G.order <= 27], ids=lambda G: G.name)
def test_normal_lattice_matches_brute_force(G):
    got = {frozenset(S.elements.tolist()) for S in gp.normal_subgroup_lattice(G)}
    assert got == brute_normal(G)


def test_known_normal_counts():
    assert len(gp.normal_subgroup_lattice(dihedral(8))) == 6
    assert len(gp.normal_subgroup_lattice(quaternion8())) == 6
    assert len(gp.normal_subgroup_lattice(symmetric(4))) == 4
    assert len(gp.normal_subgroup_lattice(alternating(4))) == 3
    assert len(gp.normal_subgroup_lattice(extraspecial_p3(3, 3))) == 7


def test_minimal_normal_and_cores():
    S4 = symmetric(4)
    mins = gp.minimal_normal_subgroups(S4)
    assert [M.order for M in mins] == [4]
    assert gp.p_core(S4, 2).order == 4
    assert gp.p_core(S4, 3).order == 1
    assert gp.sylow(S4, 2).order == 8
    assert gp.sylow(S4, 3).order == 3
    with pytest.raises(ValueError):
        gp.sylow(S4, 5)


def test_series():
    S4 = symmetric(4)
    assert [S.order for S in gp.derived_series(S4)] == [24, 12, 4, 1]
    assert gp.is_solvable(S4)
    A5 = alternating(5)
    assert gp.is_perfect(A5) and not gp.is_solvable(A5)
    assert gp.nilpotence_class(dihedral(16)) == 3
    assert gp.nilpotence_class(S4) == gp.NOT_NILPOTENT
    P = heisenberg(4)
    assert [S.order for S in gp.lower_central_series(P)] == [64, 4, 1]
    assert [S.order for S in gp.upper_central_series(P)] == [1, 4, 64]
    assert gp.frattini_p_group(P).order == 4
    assert gp.exponent(extraspecial_p3(3, 9)) == 9


def test_quotient():
    D = dihedral(8)
    Z = gp.center(D)
    Q = gp.quotient(D, Z)
    assert Q.order == 4 and gp.is_abelian(Q)
    proj = Q._cache["projection"]
    # the projection is a homomorphism
    assert np.array_equal(proj[D.mul], Q.mul[np.ix_(proj, proj)])
    H = gp.generated_subgroup(D, [4])  # a non-central reflection
    with pytest.raises(ValueError):
        gp.quotient(D, H)


def test_subgroup_helpers():
    S4 = symmetric(4)
    V = gp.minimal_normal_subgroups(S4)[0]
    A = gp.derived_subgroup(S4)
    assert gp.join(S4, V, A) == A
    assert gp.intersection(V, A) == V
    assert V.issubset(A) and V.is_closed()
    assert gp.generated_subgroup(S4, V.generators) == V
    assert gp.normalizer(S4, gp.sylow(S4, 3)).order == 6
    assert gp.centralizer(S4, V.elements).order == 4


def test_table_diagnostics():
    ok = cyclic(3).mul.astype(np.int64)
    with pytest.raises(GroupFormatError, match="square"):
        CayleyGroup(ok[:2])
    bad = ok.copy()
    bad[1, 1] = 7
    with pytest.raises(GroupFormatError, match=r"mul\[1\]\[1\] = 7"):
        CayleyGroup(bad)
    bad = ok.copy()
    bad[1, 2] = 1
    with pytest.raises(GroupFormatError, match="row 1 is not a permutation"):
        CayleyGroup(bad)
    bad = ok[[1, 0, 2]]
    with pytest.raises(GroupFormatError, match="identity"):
        CayleyGroup(bad)
    # a Latin square with identity 0 that is not associative
    loop = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(GroupFormatError, match="associativity"):
        CayleyGroup(loop)


def test_from_table_moves_identity():
    m = cyclic(4).mul.astype(np.int64)
    perm = np.array([2, 0, 1, 3])  # relabel: new label of old element
    relab = np.empty_like(m)
    relab[np.ix_(perm, perm)] = perm[m]
    G = CayleyGroup.from_table(relab)
    assert G.order == 4 and gp.is_abelian(G)


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_abelian_products(ns):
    G = cyclic(ns[0])
    for n in ns[1:]:
        G = direct_product(G, cyclic(n))
    assert G.order == int(np.prod(ns))
    assert gp.is_abelian(G)
    assert len(gp.conjugacy_classes(G)) == G.order
    assert gp.derived_subgroup(G).order == 1
    assert gp.exponent(G) == np.lcm.reduce(ns)
    assert gp.center(G).order == G.order
