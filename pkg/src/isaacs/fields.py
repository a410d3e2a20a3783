"""Small finite fields GF(p^k) as lookup tables.

An element is the integer whose base-``p`` digits are its coordinates in the
power basis ``1, x, ..., x^(k-1)`` modulo a fixed primitive polynomial: the
lexicographically least monic primitive polynomial of degree ``k`` (for
``k = 1`` the field is the integers mod ``p`` and ``x`` stands for the least
primitive root).  The polynomial is recorded on the instance so every table
built from it is reproducible.
"""
from __future__ import annotations

import itertools
from functools import cache

import numpy as np

from .arith import is_prime_power, primitive_root


def _poly_mulmod(a, b, mod, p):
    """Multiply coefficient lists (low degree first) modulo a monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    prod = prod[:k] + [0] * max(0, k - len(prod))
    return prod


def _is_primitive(mod: list[int], p: int) -> bool:
    """True iff ``x`` has multiplicative order ``p**k - 1`` modulo ``mod``."""
    k = len(mod) - 1
    one = [1] + [0] * (k - 1)
    x = [0, 1] + [0] * (k - 2)
    cur = one
    order = p**k - 1
    for i in range(1, order + 1):
        cur = _poly_mulmod(cur, x, mod, p)
        if cur == one:
            return i == order
    return False


@cache
def primitive_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Least monic primitive polynomial of degree ``k`` over GF(p), low
    coefficient first (constant term through the leading 1)."""
    if k == 1:
        return ((-primitive_root(p)) % p, 1)
    for tail in itertools.product(range(p), repeat=k):
        mod = list(reversed(tail))
        if mod[0] == 0:
            continue
        mod = mod + [1]
        if _is_primitive(mod, p):
            return tuple(mod)
    raise AssertionError("no primitive polynomial found")


class GF:
    """The field with ``q = p**k`` elements."""

    def __init__(self, q: int):
        pa = is_prime_power(q)
        if pa is None:
            raise ValueError(f"{q} is not a prime power")
        self.p, self.k = pa
        self.q = q
        self.poly = primitive_polynomial(self.p, self.k)
        p, k = self.p, self.k
        digits = np.array(
            [[(x // p**i) % p for i in range(k)] for x in range(q)], dtype=np.int64
        )
        weights = p ** np.arange(k)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        # exp[i] = x^i; log inverts it on nonzero elements
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        xpoly = [0, 1] + [0] * (k - 2) if k > 1 else [primitive_root(p)]
        for i in range(q - 1):
            exp[i] = sum(c * p**j for j, c in enumerate(cur))
            if k > 1:
                cur = _poly_mulmod(cur, xpoly, list(self.poly), p)
            else:
                cur = [(cur[0] * xpoly[0]) % p]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.exp, self.log = exp, log
        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul[np.ix_(nz, nz)] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul = mul
        self.inv = np.zeros(q, dtype=np.int64)
        self.inv[nz] = exp[(-log[nz]) % (q - 1)]
        self.generator = int(exp[1 % (q - 1)]) if q > 2 else 1
        for t in (self.add, self.neg, self.exp, self.log, self.mul, self.inv):
            t.setflags(write=False)

    def __repr__(self) -> str:
        return f"GF({self.q}) mod {self.poly_str()}"

    def poly_str(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.poly))):
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else f"{c}*{mono}" if i else str(c))
        return " + ".join(terms)

    def frobenius(self, f: int = 1) -> np.ndarray:
        """The map ``a -> a^(p^f)`` as an index array."""
        out = np.zeros(self.q, dtype=np.int64)
        nz = np.arange(1, self.q)
        out[nz] = self.exp[(self.log[nz] * self.p**f) % (self.q - 1)]
        return out

    def elements(self) -> range:
        return range(self.q)
