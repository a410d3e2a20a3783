import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isaacs import autsearch as au
from isaacs import group as gp
from isaacs.constructions import (
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    extraspecial_p3,
    heisenberg,
    is_automorphism,
    quaternion8,
    symmetric,
)
from isaacs.group import CayleyGroup
from isaacs.iso import TooLargeError, is_isomorphic, is_isomorphism, isomorphisms


def brute_aut_order(G):
    """Count automorphisms by testing every bijection fixing 0."""
    n = G.order
    count = 0
    for rest in itertools.permutations(range(1, n)):
        if is_automorphism(G, np.array((0,) + rest)):
            count += 1
    return count


def brute_aut_by_images(P):
    """|Aut(P)| from all images of a generating pair, extended along words."""
    gens = au.minimal_generating_set(P)
    assert len(gens) == 2
    words = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = int(P.mul[x, s])
                if y not in words:
                    words[y] = words[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    count = 0
    for a, b in itertools.product(range(P.order), repeat=2):
        img = (a, b)
        f = np.zeros(P.order, dtype=np.int64)
        for x, w in words.items():
            v = 0
            for i in w:
                v = int(P.mul[v, img[i]])
            f[x] = v
        if is_automorphism(P, f):
            count += 1
    return count


def relabel(G, perm):
    """Table of G with element g renamed perm[g] (perm[0] == 0)."""
    m = G.mul.astype(np.int64)
    out = np.empty_like(m)
    out[np.ix_(perm, perm)] = perm[m]
    return CayleyGroup(out, name=G.name + "'")


def c4_by_c4():
    """C4 x| C4 with the second factor inverting the first."""
    idx = np.arange(16)
    a, b = idx % 4, idx // 4
    sign = np.where(b % 2, -1, 1)
    na = (a[:, None] + sign[:, None] * a[None, :]) % 4
    nb = (b[:, None] + b[None, :]) % 4
    return CayleyGroup(na + 4 * nb, name="C4:C4")


ORDER8 = [
    (dihedral(8), 8),
    (quaternion8(), 24),
    (elementary_abelian(2, 3), 168),
    (cyclic(8), 4),
    (direct_product(cyclic(4), cyclic(2)), 8),
]


@pytest.mark.parametrize("G, n", ORDER8, ids=lambda x: getattr(x, "name", str(x)))
def test_aut_order8_brute_force(G, n):
    assert brute_aut_order(G) == n
    assert au.automorphism_group(G).order == n
    assert sum(1 for _ in isomorphisms(G, G)) == n


@pytest.mark.parametrize("exp, n", [(3, 432), (9, 54)])
def test_aut_order27_brute_force(exp, n):
    P = extraspecial_p3(3, exp)
    assert brute_aut_by_images(P) == n
    A = au.automorphism_group(P)
    assert A.order == n and A.contains_inner()
    for row in A.elements[:50]:
        assert is_automorphism(P, row)


def test_aut_orders():
    assert au.automorphism_group(heisenberg(4)).order == 9216
    assert au.automorphism_group(extraspecial_p3(5, 5)).order == 12000
    assert au.automorphism_group(extraspecial_p3(5, 25)).order == 500
    with pytest.raises(TooLargeError):
        au.automorphism_group(heisenberg(9), limit=100)


def test_aut_group_generators():
    A = au.automorphism_group(dihedral(8))
    assert A.as_permutation_group().order() == 8
    a = au.Automorphism(dihedral(8), A.elements[3])
    assert (a * a.inverse()).perm.tolist() == list(range(8))
    with pytest.raises(ValueError):
        au.Automorphism(dihedral(8), [0, 2, 1, 3, 4, 5, 6, 7])


@given(st.permutations(range(1, 16)), st.sampled_from(["d16", "q16", "c4c4", "c2q8"]))
def test_relabelled_groups_are_isomorphic(rest, which):
    from isaacs.constructions import dicyclic

    G = {
        "d16": lambda: dihedral(16),
        "q16": lambda: dicyclic(16),
        "c4c4": c4_by_c4,
        "c2q8": lambda: direct_product(cyclic(2), quaternion8()),
    }[which]()
    perm = np.array((0,) + tuple(rest))
    H = relabel(G, perm)
    res = is_isomorphic(G, H)
    assert res.isomorphic and is_isomorphism(G, H, res.witness)


def test_non_isomorphic_with_equal_invariants():
    A, B = c4_by_c4(), direct_product(cyclic(2), quaternion8())
    res = is_isomorphic(A, B)
    assert not res and res.reason == "search exhausted"
    res = is_isomorphic(dihedral(8), quaternion8())
    assert not res and res.reason == "element orders differ"
    assert not is_isomorphic(cyclic(6), symmetric(3))
    with pytest.raises(TooLargeError):
        is_isomorphic(cyclic(6), cyclic(6), limit=5)


def test_frobenius_complements():
    P = heisenberg(4)
    A = au.automorphism_group(P)
    C = au.frobenius_transitive_subgroups(A, 3, "cyclic")
    assert len(C) == 144
    reps = au.conjugacy_representatives(C, A.generators())
    assert len(reps) == 2
    P3 = extraspecial_p3(3, 3)
    A3 = au.automorphism_group(P3)
    assert len(au.frobenius_transitive_subgroups(A3, 2, "cyclic")) == 36
    assert au.frobenius_transitive_subgroups(A3, 5, "cyclic") == []
    with pytest.raises(ValueError):
        au.frobenius_transitive_subgroups(A3, 2, "dodecahedral")


def test_semilinear_complements():
    P = heisenberg(9)
    S = au.semilinear_group(P)
    assert S.order == 128 and not S.complete
    assert len(au.frobenius_transitive_subgroups(S, 8, "cyclic")) == 8
    Q = au.frobenius_transitive_subgroups(S, 8, "quaternion8")
    assert len(Q) == 16
    both = au.frobenius_transitive_subgroups(S, 8, "any")
    assert len(both) == 24
    m = au.semilinear_complement(P, 2, 3, 1)
    assert is_automorphism(P, m.automorphism.perm)
    with pytest.raises(ValueError):
        au.semilinear_complement(P, 0)
    with pytest.raises(ValueError):
        au.semilinear_complement(dihedral(8), 1)


def test_inner_automorphisms():
    assert len(au.inner_automorphisms(symmetric(4))) == 24
    assert len(au.inner_automorphisms(dihedral(8))) == 4
    assert len(au.minimal_generating_set(elementary_abelian(2, 3))) == 3
    assert gp.is_abelian(cyclic(3))
