"""Deterministic constructors for the concrete groups used throughout.

Every constructor returns a validated :class:`CayleyGroup` with the identity
at index 0.  Element encodings are documented per constructor so that
automorphisms and actions can be written down explicitly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .arith import is_prime, is_prime_power
from .fields import GF
from .group import MAX_CAYLEY_ORDER, CayleyGroup, Subgroup, generators


def cyclic(n: int) -> CayleyGroup:
    """``Z_n`` with element ``i`` standing for ``i mod n``."""
    if n < 1:
        raise ValueError("n must be positive")
    ar = np.arange(n)
    return CayleyGroup((ar[:, None] + ar[None, :]) % n, name=f"C{n}")


def elementary_abelian(p: int, k: int) -> CayleyGroup:
    """``(Z_p)^k``; element index = base-``p`` digits of the coordinate vector."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = p**k
    digits = np.array([[(x // p**i) % p for i in range(k)] for x in range(n)], dtype=np.int64)
    table = ((digits[:, None, :] + digits[None, :, :]) % p) @ (p ** np.arange(k))
    return CayleyGroup(table, name=f"C{p}^{k}")


def direct_product(G: CayleyGroup, H: CayleyGroup) -> CayleyGroup:
    """``G x H`` with ``(g, h)`` at index ``g + |G| h``."""
    n, m = G.order, H.order
    gm = G.mul.astype(np.int64)
    hm = H.mul.astype(np.int64)
    table = gm[None, :, None, :] + n * hm[:, None, :, None]
    return CayleyGroup(table.reshape(n * m, n * m), name=f"{G.name}x{H.name}")


def dihedral(order: int) -> CayleyGroup:
    """Dihedral group of the given (even) order: ``r^i s^j`` at ``i + n j``."""
    if order % 2 or order < 2:
        raise ValueError("dihedral order must be even")
    n = order // 2
    idx = np.arange(order)
    i, j = idx % n, idx // n
    # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
    sign = np.where(j == 1, -1, 1)
    ri = (i[:, None] + sign[:, None] * i[None, :]) % n
    sj = (j[:, None] + j[None, :]) % 2
    return CayleyGroup(ri + n * sj, name=f"D{order}")


def dicyclic(order: int) -> CayleyGroup:
    """``<a, b | a^(2n), b^2 = a^n, b^-1 a b = a^-1>`` of order ``4n``;
    ``a^i b^j`` at ``i + 2n j``.  Order 8 gives Q8, powers of two give
    generalized quaternion groups."""
    if order % 4:
        raise ValueError("dicyclic order must be divisible by 4")
    m = order // 2
    n = m // 2
    idx = np.arange(order)
    i, j = idx % m, idx // m
    sign = np.where(j == 1, -1, 1)
    expo = i[:, None] + sign[:, None] * i[None, :]
    both = (j[:, None] == 1) & (j[None, :] == 1)
    expo = (expo + np.where(both, n, 0)) % m
    sj = (j[:, None] + j[None, :]) % 2
    return CayleyGroup(expo + m * sj, name=f"Dic{order}")


def quaternion8() -> CayleyGroup:
    G = dicyclic(8)
    G.name = "Q8"
    return G


def extraspecial_p3(p: int, exponent: int | None = None, *, variant: str | None = None) -> CayleyGroup:
    """Extraspecial group of order ``p^3``.

    Odd ``p``: ``exponent=p`` gives ``x^i y^j z^k`` at ``i + p j + p^2 k`` with
    ``[x, y] = z`` central; ``exponent=p^2`` gives ``x^i y^j`` at
    ``i + p^2 j`` with ``[x, y] = x^p``.  For ``p = 2`` both groups have
    exponent 4 and ``variant`` selects ``"dihedral"`` (D8) or
    ``"quaternion"`` (Q8).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        if exponent not in (None, 4):
            raise ValueError("both extraspecial groups of order 8 have exponent 4")
        if variant == "dihedral":
            G = dihedral(8)
        elif variant == "quaternion":
            G = quaternion8()
        else:
            raise ValueError("p = 2 needs variant='dihedral' or 'quaternion'")
        return G
    if variant is not None:
        raise ValueError("variant only applies to p = 2")
    n = p**3
    idx = np.arange(n)
    if exponent == p:
        i, j, k = idx % p, (idx // p) % p, idx // (p * p)
        # y^j x^i' = x^i' y^j z^(-j i')
        ni = (i[:, None] + i[None, :]) % p
        nj = (j[:, None] + j[None, :]) % p
        nk = (k[:, None] + k[None, :] - j[:, None] * i[None, :]) % p
        table = ni + p * nj + p * p * nk
        name = f"{p}^1+2_+"
    elif exponent == p * p:
        q = p * p
        i, j = idx % q, idx // q
        # y^j x^k y^-j = x^(k (1 - p)^j) = x^(k (1 - j p)) mod p^2
        ni = (i[:, None] + i[None, :] * (1 - j[:, None] * p)) % q
        nj = (j[:, None] + j[None, :]) % p
        table = ni + q * nj
        name = f"{p}^1+2_-"
    else:
        raise ValueError(f"exponent must be {p} or {p * p}")
    return CayleyGroup(table, name=name)


def heisenberg(q: int) -> CayleyGroup:
    """Upper unitriangular 3x3 matrices over GF(q).

    ``[[1, a, c], [0, 1, b], [0, 0, 1]]`` sits at ``a + q b + q^2 c`` where
    ``a, b, c`` are field element indices (see :class:`GF`).
    """
    if q > 16:
        raise ValueError(f"heisenberg({q}) has order {q**3} > 4096")
    F = GF(q)
    idx = np.arange(q**3)
    a, b, c = idx % q, (idx // q) % q, idx // (q * q)
    na = F.add[a[:, None], a[None, :]]
    nb = F.add[b[:, None], b[None, :]]
    nc = F.add[F.add[c[:, None], c[None, :]], F.mul[a[:, None], b[None, :]]]
    G = CayleyGroup(na + q * nb + q * q * nc, name=f"Heis({q})")
    G._cache["field"] = F
    return G


def permutation_closure(gens: Sequence[Sequence[int]], limit: int = MAX_CAYLEY_ORDER) -> list[tuple]:
    """All elements of the group generated by one-line permutations, in BFS
    order from the identity."""
    degree = len(gens[0])
    ident = tuple(range(degree))
    seen = {ident: 0}
    out = [ident]
    gens = [tuple(g) for g in gens]
    k = 0
    while k < len(out):
        g = out[k]
        for s in gens:
            h = tuple(s[x] for x in g)
            if h not in seen:
                seen[h] = len(out)
                out.append(h)
                if len(out) > limit:
                    raise ValueError(f"group exceeds {limit} elements")
        k += 1
    return out


def from_permutations(gens: Sequence[Sequence[int]], name: str = "") -> CayleyGroup:
    """Cayley table of a permutation group; product ``gh`` means apply ``g``
    first, then ``h``."""
    elts = permutation_closure(gens)
    arr = np.array(elts, dtype=np.int64)
    keys = {e: i for i, e in enumerate(elts)}
    n = len(elts)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        prod = arr[:, arr[i]]  # row j: j-th perm applied after i-th
        table[i] = [keys[tuple(r)] for r in prod]
    return CayleyGroup(table, name=name)


def symmetric(n: int) -> CayleyGroup:
    gens = [list(range(1, n)) + [0]]
    if n > 1:
        gens.append([1, 0] + list(range(2, n)))
    return from_permutations(gens, name=f"S{n}")


def alternating(n: int) -> CayleyGroup:
    """``A_n`` generated by the 3-cycles ``(0 1 k)``."""
    gens = [
        [1 if x == 0 else k if x == 1 else 0 if x == k else x for x in range(n)]
        for k in range(2, n)
    ] or [list(range(n))]
    return from_permutations(gens, name=f"A{n}")


def is_automorphism(P: CayleyGroup, perm: np.ndarray) -> bool:
    perm = np.asarray(perm)
    if perm.shape != (P.order,) or perm[0] != 0:
        return False
    if len(np.unique(perm)) != P.order:
        return False
    return bool(np.array_equal(perm[P.mul], P.mul[np.ix_(perm, perm)]))


class ActionError(ValueError):
    """An action specification does not define a homomorphism into Aut(P)."""


@dataclass
class ActionSpec:
    """``H`` acting on ``P``: each listed generator of ``H`` maps to an
    automorphism of ``P`` given as an index array (``a[x]`` is the image)."""

    H: CayleyGroup
    P: CayleyGroup
    images: Mapping[int, np.ndarray]
    _table: np.ndarray | None = field(default=None, repr=False)

    def action_table(self) -> np.ndarray:
        """Row ``h`` is the automorphism of ``P`` attached to ``h``."""
        if self._table is not None:
            return self._table
        H, P = self.H, self.P
        for h, a in self.images.items():
            if not is_automorphism(P, a):
                raise ActionError(f"image of generator {h} is not an automorphism of P")
        gens = sorted(self.images)
        table = np.full((H.order, P.order), -1, dtype=np.int64)
        table[0] = np.arange(P.order)
        order = [0]
        seen = np.zeros(H.order, dtype=bool)
        seen[0] = True
        k = 0
        while k < len(order):
            h = order[k]
            for s in gens:
                hs = int(H.mul[h, s])
                if not seen[hs]:
                    seen[hs] = True
                    table[hs] = table[h][np.asarray(self.images[s])]
                    order.append(hs)
            k += 1
        if not seen.all():
            raise ActionError("listed generators do not generate H")
        for s in gens:
            lhs = table[H.mul[:, s]]
            rhs = table[:, np.asarray(self.images[s])]
            bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
            if len(bad):
                raise ActionError(
                    f"relation violated: action of h={bad[0]} times generator {s} "
                    "does not compose"
                )
        self._table = table
        return table


@dataclass
class SemidirectProduct:
    group: CayleyGroup
    normal: Subgroup
    complement: Subgroup
    spec: ActionSpec


def semidirect_product(spec: ActionSpec, name: str = "") -> SemidirectProduct:
    """``P x| H`` with ``(x, h)`` at index ``x + |P| h`` and product
    ``(x1, h1)(x2, h2) = (x1 * h1(x2), h1 h2)``."""
    act = spec.action_table()
    P, H = spec.P, spec.H
    nP, nH = P.order, H.order
    n = nP * nH
    if n > 4 * MAX_CAYLEY_ORDER:
        raise ValueError(f"semidirect product of order {n} is too large")
    pm = P.mul.astype(np.int64)
    hm = H.mul.astype(np.int64)
    table = np.empty((nH, nP, nH, nP), dtype=np.int32)
    for h1 in range(nH):
        A = pm[:, act[h1]]
        table[h1] = A[:, None, :] + nP * hm[h1][None, :, None]
    label = name or f"({P.name}):({H.name})"
    G = CayleyGroup(table.reshape(n, n), name=label)
    normal = Subgroup(G, np.arange(nP))
    complement = Subgroup(G, np.arange(nH) * nP)
    return SemidirectProduct(G, normal, complement, spec)


def field_frobenius_group(q: int) -> CayleyGroup:
    """``(GF(q), +) x| GF(q)^x``: the map ``t -> a t + b`` (with ``a = g^k``)
    sits at ``b + q k``; the product is composition ``f1 o f2``."""
    if q * (q - 1) > MAX_CAYLEY_ORDER:
        raise ValueError(f"AGL(1,{q}) has order {q * (q - 1)}, beyond the Cayley backend")
    F = GF(q)
    n = q * (q - 1)
    idx = np.arange(n)
    b, k = idx % q, idx // q
    a = F.exp[k]
    nb = F.add[b[:, None], F.mul[a[:, None], b[None, :]]]
    nk = (k[:, None] + k[None, :]) % (q - 1)
    G = CayleyGroup(nb + q * nk, name=f"AGL(1,{q})")
    G._cache["field"] = F
    return G


def field_multiplication_action(q: int) -> tuple[CayleyGroup, CayleyGroup, list[np.ndarray]]:
    """``V = (GF(q), +)`` as an elementary abelian group, ``H = C_(q-1)``,
    and the action of ``g^k`` by multiplication, as permutations of V's
    element indices."""
    F = GF(q)
    pa = is_prime_power(q)
    V = elementary_abelian(*pa)  # same digit encoding as GF
    H = cyclic(q - 1)
    action = [F.mul[int(F.exp[k])] for k in range(q - 1)]
    return V, H, action


@dataclass
class FrobeniusCheck:
    homomorphism: bool
    fixed_point_free: bool
    transitive: bool

    def __bool__(self) -> bool:
        return self.homomorphism and self.fixed_point_free and self.transitive


def two_transitive_frobenius_check(
    V: CayleyGroup, H: CayleyGroup, action: Sequence[np.ndarray]
) -> FrobeniusCheck:
    """``VH`` is a two-transitive Frobenius group iff every nontrivial
    ``h`` fixes only the identity of ``V`` and ``H`` is transitive on
    ``V`` minus the identity.  ``action[h]`` permutes V's element indices."""
    act = np.asarray(action, dtype=np.int64)
    hom = bool(
        all(is_automorphism(V, act[h]) for h in generators(H))
        and all(np.array_equal(act[H.mul[:, s]], act[:, act[s]]) for s in generators(H))
    )
    fixed = (act[1:] == np.arange(V.order)[None, :]).sum(axis=1)
    fpf = bool(np.all(fixed == 1))
    orbit = np.unique(act[:, 1]) if V.order > 1 else np.array([0])
    transitive = len(orbit) == V.order - 1 and 0 not in orbit
    if V.order == 1:
        transitive = True
    return FrobeniusCheck(hom, fpf, bool(transitive))


# ---------------------------------------------------------------------------
# SL(2,5) inside GL(2,p)


def _mat_key(m: np.ndarray, p: int) -> np.ndarray:
    """Encode 2x2 matrices (shape (..., 2, 2)) as integers."""
    return m[..., 0, 0] + p * m[..., 0, 1] + p * p * m[..., 1, 0] + p**3 * m[..., 1, 1]


def _mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.einsum("...ij,...jk->...ik", a, b) % p


def matrix_closure(gens: Sequence[np.ndarray], p: int, limit: int = 100_000) -> np.ndarray:
    """All products of the given 2x2 matrices over GF(p), sorted by key."""
    gens = np.asarray(gens, dtype=np.int64) % p
    ident = np.eye(2, dtype=np.int64)[None]
    elts = ident
    keys = set(_mat_key(ident, p).tolist())
    frontier = ident
    while len(frontier):
        prod = _mat_mul(frontier[:, None], gens[None, :], p).reshape(-1, 2, 2)
        k = _mat_key(prod, p)
        k, first = np.unique(k, return_index=True)
        fresh = np.array([x not in keys for x in k.tolist()], dtype=bool)
        frontier = prod[first[fresh]]
        keys.update(k[fresh].tolist())
        elts = np.concatenate([elts, frontier])
        if len(elts) > limit:
            raise ValueError("matrix group too large")
    return elts[np.argsort(_mat_key(elts, p), kind="stable")]


def matrix_group_as_cayley(elts: np.ndarray, p: int, name: str = "") -> CayleyGroup:
    """Cayley table of a matrix group (identity moved to index 0)."""
    keys = _mat_key(elts, p)
    order = np.argsort(keys)
    skeys = keys[order]
    n = len(elts)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        prod = _mat_mul(elts[i][None], elts, p)
        table[i] = order[np.searchsorted(skeys, _mat_key(prod, p))]
    return CayleyGroup.from_table(table, name=name)


def matrix_action_on_vectors(elts: np.ndarray, p: int) -> list[np.ndarray]:
    """Each matrix as a permutation of ``GF(p)^2`` (column vectors, index
    ``v0 + p v1``, the encoding of ``elementary_abelian(p, 2)``)."""
    idx = np.arange(p * p)
    vecs = np.stack([idx % p, idx // p])  # 2 x p^2
    out = []
    for m in elts:
        w = (m @ vecs) % p
        out.append(w[0] + p * w[1])
    return out


@dataclass
class SL25Complement:
    p: int
    generators: list[np.ndarray]
    elements: np.ndarray
    scalar_order: int
    order: int
    orbit_size: int
    fixed_point_free: bool
    transitive: bool

    @property
    def certified(self) -> bool:
        return self.fixed_point_free and self.transitive and self.order == self.p**2 - 1


SL25_SCALAR = {11: 1, 29: 7, 59: 29}


def sl25_complement(p: int) -> SL25Complement:
    """A fixed-point-free copy of ``SL(2,5)`` in ``GL(2,p)`` for
    ``p in {11, 29, 59}``, extended by the central scalar cyclic factor of
    order ``(p^2 - 1)/120`` so that it is regular on nonzero vectors.

    ``A = [[0, -1], [1, 0]]`` (order 4) is fixed; ``B`` runs over
    determinant-1, trace-1 matrices (so ``B^3 = -1``) in lexicographic order
    until ``(AB)^5 = -1``.  Then ``<A, B>`` is a quotient of the binary
    icosahedral group with ``-1`` in it, hence equal to it.
    """
    if p not in SL25_SCALAR:
        raise ValueError("SL(2,5) complements exist only for p in {11, 29, 59}")
    A = np.array([[0, p - 1], [1, 0]], dtype=np.int64)
    minus = (-np.eye(2, dtype=np.int64)) % p
    B = None
    for a, b, c in itertools.product(range(p), repeat=3):
        d = (1 - a) % p
        if (a * d - b * c) % p != 1:
            continue
        M = np.array([[a, b], [c, d]], dtype=np.int64)
        AB = _mat_mul(A, M, p)
        X = np.eye(2, dtype=np.int64)
        for _ in range(5):
            X = _mat_mul(X, AB, p)
        if np.array_equal(X, minus):
            B = M
            break
    if B is None:
        raise AssertionError(f"no SL(2,5) generator pair found in GL(2,{p})")
    gens = [A, B]
    s = SL25_SCALAR[p]
    if s > 1:
        from .arith import primitive_root

        lam = pow(primitive_root(p), (p - 1) // s, p)
        gens.append(lam * np.eye(2, dtype=np.int64))
    elts = matrix_closure(gens, p)
    nontrivial = elts[_mat_key(elts, p) != _mat_key(np.eye(2, dtype=np.int64), p)]
    shifted = (nontrivial - np.eye(2, dtype=np.int64)[None]) % p
    det = (shifted[:, 0, 0] * shifted[:, 1, 1] - shifted[:, 0, 1] * shifted[:, 1, 0]) % p
    fpf = bool(np.all(det != 0))
    orbit = np.unique(elts[:, 0, 0] + p * elts[:, 1, 0])
    orbit_size = len(orbit)
    return SL25Complement(
        p=p,
        generators=gens,
        elements=elts,
        scalar_order=s,
        order=len(elts),
        orbit_size=orbit_size,
        fixed_point_free=fpf,
        transitive=orbit_size == p * p - 1,
    )
