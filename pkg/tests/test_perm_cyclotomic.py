import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isaacs import cyclotomic as cy
from isaacs.constructions import heisenberg, symmetric
from isaacs.perm import PermutationGroup, commutator, compose, invert, is_identity


def cycle(n, *pts):
    p = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        p[a] = b
    return p


def test_symmetric_orders():
    for n in range(2, 9):
        G = PermutationGroup(n, [cycle(n, *range(n)), cycle(n, 0, 1)])
        assert G.order() == math.factorial(n)
        assert G.is_solvable() == (n <= 4)


def test_membership_and_series():
    n = 6
    A = PermutationGroup(n, [cycle(n, 0, 1, 2), cycle(n, 1, 2, 3, 4, 5)])
    assert A.order() == 360
    assert cycle(n, 0, 1, 2) in A
    assert cycle(n, 0, 1) not in A
    assert A.is_perfect()


def test_regular_representation():
    P = heisenberg(4)
    R = PermutationGroup.regular(P)
    assert R.order() == 64
    assert [D.order() for D in R.derived_series()] == [64, 4, 1]
    back = R.to_cayley()
    assert back.order == 64


@st.composite
def perm_gens(draw):
    n = draw(st.integers(2, 7))
    k = draw(st.integers(1, 3))
    gens = [draw(st.permutations(range(n))) for _ in range(k)]
    return n, gens


@given(perm_gens())
def test_bsgs_order_matches_enumeration(data):
    n, gens = data
    G = PermutationGroup(n, gens)
    elts = G.elements()
    assert G.order() == len(elts)
    for e in elts[:20]:
        assert G.contains(e)
    # an element outside is rejected when the group is proper
    if len(elts) < math.factorial(n):
        inside = {e.tobytes() for e in elts}
        for p in (np.asarray(cycle(n, 0, 1), dtype=np.int32), np.asarray(cycle(n, *range(n)), dtype=np.int32)):
            assert G.contains(p) == (p.tobytes() in inside)


@given(st.permutations(range(6)), st.permutations(range(6)))
def test_perm_arithmetic(a, b):
    a, b = np.array(a), np.array(b)
    assert is_identity(compose(a, invert(a)))
    c = commutator(a, b)
    assert np.array_equal(compose(a, b), compose(compose(b, a), c))


def test_symmetric_cayley_agrees():
    assert symmetric(5).order == 120


# cyclotomic arithmetic


def test_cyclotomic_polynomials():
    assert cy.cyclotomic_polynomial(1) == (-1, 1)
    assert cy.cyclotomic_polynomial(6) == (1, -1, 1)
    assert cy.cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # Phi_105 is the first with a coefficient of absolute value 2
    assert min(cy.cyclotomic_polynomial(105)) == -2


@given(st.integers(1, 60))
def test_product_of_cyclotomics(m):
    prod = np.array([1], dtype=np.int64)
    for d in range(1, m + 1):
        if m % d == 0:
            prod = np.convolve(prod, cy.cyclotomic_polynomial(d))
    expect = np.zeros(m + 1, dtype=np.int64)
    expect[0], expect[m] = -1, 1
    assert np.array_equal(prod, expect)


@given(st.integers(1, 40), st.lists(st.integers(-5, 5), min_size=40, max_size=40),
       st.lists(st.integers(-5, 5), min_size=40, max_size=40))
def test_values_agree_with_complex(m, a, b):
    x = cy.CyclotomicValue(a[:m], m)
    y = cy.CyclotomicValue(b[:m], m)
    tol = 1e-6 * (1 + m) ** 2
    assert abs(complex(x * y) - complex(x) * complex(y)) < tol
    assert abs(complex(x + y) - complex(x) - complex(y)) < tol
    assert abs(complex(x.conjugate()) - complex(x).conjugate()) < tol
    assert (x - x).is_zero()
    # equality is decided on the canonical form, matching complex equality
    assert (x == y) == (abs(complex(x) - complex(y)) < 1e-9)


def test_root_sums_vanish():
    for m in (2, 3, 5, 6, 12):
        total = sum((cy.CyclotomicValue.root(j, m) for j in range(m)), cy.CyclotomicValue.integer(0, m))
        assert total.is_zero()
    assert cy.CyclotomicValue.root(0, 7).as_integer() == 1


def test_pairing_matches_complex():
    rng = np.random.default_rng(1)
    m = 12
    A = rng.integers(-3, 4, size=(3, 5, m))
    B = rng.integers(-3, 4, size=(4, 5, m))
    w = rng.integers(1, 5, size=5)
    out = cy.hermitian_pairing(A, B, w)
    z = np.exp(2j * np.pi * np.arange(m) / m)
    ref = np.einsum("k,ik,jk->ij", w, A @ z, np.conj(B @ z))
    assert np.allclose(out @ z, ref)


def test_pairing_overflow_guard():
    A = np.full((1, 4, 4), 2**25, dtype=np.int64)
    with pytest.raises(OverflowError):
        cy.hermitian_pairing(A, A, np.ones(4, dtype=np.int64))


def test_rescale():
    v = np.zeros(3, dtype=np.int64)
    v[1] = 1
    w = cy.rescale(v, 3, 12)
    assert np.flatnonzero(w).tolist() == [4]
