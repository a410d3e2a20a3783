"""Number-theoretic helpers: Isaacs degree extraction and Zsigmondy-type divisors."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def factor(n: int) -> Counter:
    """Prime factorization by trial division, as a Counter ``{prime: exponent}``.

    ``factor(1)`` is the empty Counter.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: Counter = Counter()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] += 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] += 1
    return out


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, a)`` with ``n == p**a`` and ``a >= 1``, else None.

    By convention 1 is not a prime power.
    """
    if n < 2:
        return None
    f = factor(n)
    if len(f) != 1:
        return None
    ((p, a),) = f.items()
    return p, a


def prime_divisors(n: int) -> list[int]:
    return sorted(factor(n))


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def primitive_root(p: int) -> int:
    """Least primitive root modulo the prime ``p``."""
    if p == 2:
        return 1
    qs = prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class IsaacsParameters:
    e: int
    p: int | None
    a: int | None
    d: int
    order: int

    @property
    def prime_power(self) -> bool:
        return self.p is not None


def isaacs_degree(order: int) -> IsaacsParameters | None:
    """Find the ``e > 1`` with ``e**4 - e**3 == order``.

    The returned parameters carry ``p = a = None`` when ``e`` is not a prime
    power; such degrees cannot occur for actual groups.
    """
    if order < 1:
        raise ValueError("order must be positive")
    e = 2
    while e**4 - e**3 < order:
        e += 1
    if e**4 - e**3 != order:
        return None
    pa = is_prime_power(e)
    p, a = pa if pa else (None, None)
    return IsaacsParameters(e=e, p=p, a=a, d=e * e - e, order=order)


@dataclass(frozen=True)
class ZsigmondyWitness:
    m: int
    a: int
    q: int
    n: int

    @property
    def full_exponent(self) -> int:
        """Exponent of ``q`` in ``m**a - 1`` (``n`` is the least one that works)."""
        top, k = self.m**self.a - 1, 0
        while top % self.q == 0:
            top //= self.q
            k += 1
        return k

    def validate(self) -> bool:
        qn = self.q**self.n
        if not is_prime(self.q) or (self.m**self.a - 1) % qn:
            return False
        return all((self.m**b - 1) % qn for b in range(1, self.a))


def generalized_zsigmondy(m: int, a: int) -> ZsigmondyWitness | None:
    """Smallest prime ``q`` (with least exponent ``n``) such that ``q**n``
    divides ``m**a - 1`` but no ``m**b - 1`` for ``1 <= b < a``.

    Returns None only when ``m**a - 1 == 1`` (i.e. ``(m, a) == (2, 1)``), which
    has no prime divisor at all.
    """
    if m < 2 or a < 1:
        raise ValueError("need m >= 2 and a >= 1")
    top = m**a - 1
    for q in prime_divisors(top) if top > 1 else []:
        full = p_part(top, q)
        qn, n = q, 1
        while qn <= full:
            if all((m**b - 1) % qn for b in range(1, a)):
                return ZsigmondyWitness(m, a, q, n)
            qn *= q
            n += 1
    if top == 1:
        return None
    raise AssertionError(f"no generalized Zsigmondy divisor for ({m}, {a})")
