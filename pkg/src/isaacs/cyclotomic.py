"""Exact arithmetic in the cyclotomic ring Z[zeta_m].

Values are integer coefficient vectors of length ``m`` in the basis
``1, zeta, ..., zeta^(m-1)``.  Such vectors live in Z[x]/(x^m - 1), so many
vectors represent the same algebraic integer; equality and zero tests go
through the canonical remainder modulo the ``m``-th cyclotomic polynomial.
"""
from __future__ import annotations

from functools import cache

import numpy as np

from .arith import factor


def _divisors(m: int) -> list[int]:
    divs = [1]
    for p, k in factor(m).items():
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first, monic den)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@cache
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@cache
def reduction_matrix(m: int) -> np.ndarray:
    """``R`` with ``v @ R`` the remainder of ``sum v_i x^i`` modulo Phi_m."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    R = np.zeros((m, deg), dtype=np.int64)
    cur = np.zeros(deg, dtype=np.int64)
    cur[0] = 1
    for i in range(m):
        R[i] = cur
        # multiply by x and reduce
        top = cur[-1]
        cur = np.concatenate([[0], cur[:-1]]) - top * np.asarray(phi[:-1], dtype=np.int64)
    R.setflags(write=False)
    return R


def reduce(vecs: np.ndarray, m: int) -> np.ndarray:
    """Canonical form of coefficient vectors along the last axis."""
    vecs = np.asarray(vecs, dtype=np.int64)
    return vecs @ reduction_matrix(m)


def conjugate(vecs: np.ndarray) -> np.ndarray:
    """Complex conjugation: ``zeta^i -> zeta^-i`` along the last axis."""
    vecs = np.asarray(vecs)
    return np.roll(vecs[..., ::-1], 1, axis=-1)


def rescale(vecs: np.ndarray, m_from: int, m_to: int) -> np.ndarray:
    """Re-express vectors over zeta_(m_from) in terms of zeta_(m_to)."""
    if m_to % m_from:
        raise ValueError(f"{m_from} does not divide {m_to}")
    vecs = np.asarray(vecs, dtype=np.int64)
    out = np.zeros(vecs.shape[:-1] + (m_to,), dtype=np.int64)
    out[..., :: m_to // m_from] = vecs
    return out


def hermitian_pairing(A: np.ndarray, B: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``out[i, j] = sum_k w_k A[i, k] * conj(B[j, k])`` in Z[x]/(x^m - 1).

    ``A`` is (a, r, m), ``B`` is (b, r, m); the result is (a, b, m).  Uses
    float64 matrix products, which are exact while every partial sum stays
    below 2^53 (checked)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    w = np.asarray(weights, dtype=np.int64)
    m = A.shape[-1]
    bound = int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0)) * int(w.max(initial=0))
    if bound * A.shape[1] * m >= 2**52:
        raise OverflowError("pairing would lose exactness")
    cB = conjugate(B).astype(np.float64)
    wA = (A * w[None, :, None]).astype(np.float64)
    out = np.zeros((A.shape[0], B.shape[0], m), dtype=np.float64)
    nz = np.flatnonzero(np.any(wA != 0, axis=(0, 1)))
    for s in nz:
        rolled = np.roll(cB, s, axis=-1)  # rolled[j, k, t] = cB[j, k, t - s]
        out += np.einsum("ik,jkt->ijt", wA[:, :, s], rolled, optimize=True)
    return np.rint(out).astype(np.int64)


class CyclotomicValue:
    """A single element of Z[zeta_m]."""

    __slots__ = ("m", "coeffs")

    def __init__(self, coeffs, m: int | None = None):
        coeffs = np.asarray(coeffs, dtype=np.int64).ravel()
        self.m = len(coeffs) if m is None else m
        if len(coeffs) != self.m:
            raise ValueError("coefficient vector must have length m")
        self.coeffs = coeffs

    @classmethod
    def integer(cls, k: int, m: int) -> "CyclotomicValue":
        c = np.zeros(m, dtype=np.int64)
        c[0] = k
        return cls(c, m)

    @classmethod
    def root(cls, j: int, m: int) -> "CyclotomicValue":
        c = np.zeros(m, dtype=np.int64)
        c[j % m] = 1
        return cls(c, m)

    def reduced(self) -> tuple[int, ...]:
        return tuple(reduce(self.coeffs, self.m).tolist())

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def _coerce(self, other) -> "CyclotomicValue":
        if isinstance(other, CyclotomicValue):
            if other.m != self.m:
                raise ValueError("mixed cyclotomic orders")
            return other
        return CyclotomicValue.integer(int(other), self.m)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.reduced() == other.reduced()

    def __hash__(self) -> int:
        return hash((self.m, self.reduced()))

    def __add__(self, other) -> "CyclotomicValue":
        other = self._coerce(other)
        return CyclotomicValue(self.coeffs + other.coeffs, self.m)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicValue":
        return CyclotomicValue(-self.coeffs, self.m)

    def __sub__(self, other) -> "CyclotomicValue":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "CyclotomicValue":
        other = self._coerce(other)
        m = self.m
        out = np.zeros(m, dtype=np.int64)
        for i in np.flatnonzero(self.coeffs):
            out += self.coeffs[i] * np.roll(other.coeffs, i)
        return CyclotomicValue(out, m)

    __rmul__ = __mul__

    def conjugate(self) -> "CyclotomicValue":
        return CyclotomicValue(conjugate(self.coeffs), self.m)

    def __complex__(self) -> complex:
        z = np.exp(2j * np.pi * np.arange(self.m) / self.m)
        return complex(self.coeffs @ z)

    def as_integer(self) -> int | None:
        r = self.reduced()
        return r[0] if not any(r[1:]) else None

    def __repr__(self) -> str:
        r = self.reduced()
        terms = [
            (f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
            for i, c in enumerate(r) if c
        ]
        return " + ".join(terms) if terms else "0"
