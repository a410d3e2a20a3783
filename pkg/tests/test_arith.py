from hypothesis import given, strategies as st

from isaacs.arith import (
    factor,
    generalized_zsigmondy,
    is_prime,
    is_prime_power,
    isaacs_degree,
    next_prime,
    p_part,
    primitive_root,
)


def brute_is_prime(n):
    return n > 1 and all(n % d for d in range(2, n))


def test_is_prime_small():
    assert [n for n in range(60) if is_prime(n)] == [n for n in range(60) if brute_is_prime(n)]


def test_factor_examples():
    assert factor(375000) == {2: 3, 3: 1, 5: 6}
    assert factor(1) == {}
    assert is_prime_power(729) == (3, 6)
    assert is_prime_power(1) is None
    assert is_prime_power(12) is None


@given(st.integers(1, 10**6))
def test_factor_reconstructs(n):
    f = factor(n)
    prod = 1
    for p, k in f.items():
        assert is_prime(p)
        prod *= p**k
    assert prod == n


def test_isaacs_degree_round_trip():
    for e in range(2, 101):
        params = isaacs_degree(e**4 - e**3)
        assert params.e == e and params.d == e * e - e
        assert params.prime_power == (is_prime_power(e) is not None)


def test_isaacs_degree_rejects():
    assert isaacs_degree(24) is None
    assert isaacs_degree(100) is None
    p = isaacs_degree(54)
    assert (p.e, p.d, p.p, p.a) == (3, 6, 3, 1)


def test_zsigmondy_known_witnesses():
    w = generalized_zsigmondy(2, 6)
    assert (w.q, w.n) == (3, 2)
    w = generalized_zsigmondy(7, 2)
    assert w.q == 2 and w.n == 2 and w.full_exponent == 4
    w = generalized_zsigmondy(2, 4)
    assert (w.q, w.n) == (5, 1)
    assert generalized_zsigmondy(2, 1) is None


@given(st.integers(2, 30), st.integers(1, 8))
def test_zsigmondy_validates_and_is_least(m, a):
    w = generalized_zsigmondy(m, a)
    if m**a - 1 == 1:
        assert w is None
        return
    assert w.validate()
    top = m**a - 1
    # no smaller prime qualifies with any exponent
    for q in sorted(factor(top)):
        if q >= w.q:
            break
        k = 1
        while top % q**k == 0:
            assert any((m**b - 1) % q**k == 0 for b in range(1, a))
            k += 1


def test_misc():
    assert p_part(375000, 5) == 5**6
    assert next_prime(13) == 17
    for p in (3, 7, 11, 23, 101):
        g = primitive_root(p)
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1
