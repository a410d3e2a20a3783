"""Automorphism groups of small p-groups and Frobenius complements inside them.

Automorphisms are index arrays ``a`` with ``a[x]`` the image of element
``x``.  Composition follows the permutation convention of :mod:`.perm`:
``a * b`` applies ``a`` first, i.e. ``b[a]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constructions import is_automorphism
from .fields import GF
from .group import (
    CayleyGroup,
    center,
    frattini_p_group,
    generated_subgroup,
    is_p_group,
)
from .iso import Search, TooLargeError
from .perm import PermutationGroup

FULL_AUT_LIMIT = 729
MAX_AUT_ELEMENTS = 1_000_000
SHAPES = ("cyclic", "quaternion8", "order24", "any")


class Automorphism:
    """An automorphism of ``P``; verified on all of ``P x P`` when created."""

    __slots__ = ("P", "perm")

    def __init__(self, P: CayleyGroup, perm, *, check: bool = True):
        perm = np.asarray(perm, dtype=np.int64)
        if check and not is_automorphism(P, perm):
            raise ValueError("map does not preserve multiplication")
        self.P = P
        self.perm = perm

    def __call__(self, x):
        return self.perm[x]

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(self.P, other.perm[self.perm], check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and np.array_equal(self.perm, other.perm)

    def __hash__(self) -> int:
        return hash(self.perm.tobytes())

    def inverse(self) -> "Automorphism":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        return Automorphism(self.P, inv, check=False)

    def order(self) -> int:
        return _perm_order(self.perm)

    def __repr__(self) -> str:
        return f"<Automorphism of order {self.order()} of {self.P!r}>"


def _perm_order(a: np.ndarray) -> int:
    ident = np.arange(len(a))
    cur = a.copy()
    k = 1
    while not np.array_equal(cur, ident):
        cur = a[cur]
        k += 1
    return k


def _row_orders(rows: np.ndarray, limit: int) -> np.ndarray:
    """Order of each permutation row, or 0 when it exceeds ``limit``."""
    ident = np.arange(rows.shape[1])
    out = np.zeros(len(rows), dtype=np.int64)
    cur = rows.astype(np.int64)
    r = np.arange(len(rows))[:, None]
    for k in range(1, limit + 1):
        done = (out == 0) & np.all(cur == ident, axis=1)
        out[done] = k
        if out.all():
            break
        cur = rows[r, cur]
    return out


def minimal_generating_set(P: CayleyGroup) -> list[int]:
    """Lifts of a basis of ``P/Phi(P)``, least indices first."""
    if is_p_group(P) is None and P.order > 1:
        raise ValueError(f"{P!r} is not a p-group")
    Phi = frattini_p_group(P)
    span = Phi
    gens = []
    for x in range(P.order):
        if not span.mask[x]:
            gens.append(x)
            span = generated_subgroup(P, [x], span)
    return gens


def inner_automorphisms(P: CayleyGroup) -> np.ndarray:
    """Conjugation maps ``x -> g^-1 x g`` as rows (with repetitions removed)."""
    rows = np.array([P.conj(np.arange(P.order), g) for g in range(P.order)])
    return np.unique(rows, axis=0)


@dataclass
class AutGroup:
    """A group of automorphisms of ``P`` given by an explicit element list."""

    P: CayleyGroup
    elements: np.ndarray
    complete: bool = True
    _gens: list[np.ndarray] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self) -> dict[bytes, int]:
        return {r.astype(np.int64).tobytes(): i for i, r in enumerate(self.elements)}

    def as_permutation_group(self) -> PermutationGroup:
        return PermutationGroup(self.P.order, self.generators())

    def generators(self) -> list[np.ndarray]:
        """A generating set, grown greedily until its order matches."""
        if self._gens is None:
            G = PermutationGroup(self.P.order)
            from .perm import BSGS

            G._bsgs = BSGS(self.P.order)
            for row in self.elements:
                if G.order() == self.order:
                    break
                row = row.astype(np.int32)
                if G._bsgs.add_generator(row):
                    G.generators.append(row)
            if G.order() != self.order:
                raise AssertionError("element list is not a group")
            self._gens = [g.astype(np.int64) for g in G.generators]
        return self._gens

    def contains_inner(self) -> bool:
        idx = self.index_of()
        return all(r.astype(np.int64).tobytes() in idx for r in inner_automorphisms(self.P))


def automorphism_group(
    P: CayleyGroup, *, limit: int = FULL_AUT_LIMIT, max_elements: int = MAX_AUT_ELEMENTS
) -> AutGroup:
    """All automorphisms of a ``p``-group of order at most ``limit``.

    Images of a minimal generating set are searched in increasing index
    order; candidates must lie outside ``Phi(P)`` and share order and class
    size with the generator (so the centre maps to itself)."""
    if P.order > limit:
        raise TooLargeError(f"|P| = {P.order} exceeds {limit}")
    gens = minimal_generating_set(P)
    if not gens:
        return AutGroup(P, np.zeros((1, 1), dtype=np.int16))
    outside = np.flatnonzero(~frattini_p_group(P).mask)
    search = Search(P, P, seq=gens, candidates=lambda j: outside)
    rows = []
    for img in search:
        rows.append(img.astype(np.int16 if P.order < 2**15 else np.int32))
        if len(rows) > max_elements:
            raise TooLargeError(f"|Aut(P)| exceeds {max_elements}")
    return AutGroup(P, np.asarray(rows))


# ---------------------------------------------------------------------------
# Frobenius complements acting on the centre


def sort_rows(R: np.ndarray) -> np.ndarray:
    """Rows in lexicographic order (a canonical form for element lists)."""
    return R[np.lexsort(R.T[::-1])]


def _closure_rows(gens: list[np.ndarray], limit: int) -> np.ndarray | None:
    ident = np.arange(len(gens[0]), dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                k = y.tobytes()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > limit:
                        return None
        frontier = nxt
    return sort_rows(np.array(list(seen.values())))


def _acts_regularly(rows: np.ndarray, zs: np.ndarray) -> bool:
    """Nontrivial rows fix no point of ``zs`` and one orbit covers ``zs``."""
    ident = np.arange(rows.shape[1])
    nontriv = ~np.all(rows == ident, axis=1)
    fixed = np.any(rows[np.ix_(nontriv, zs)] == zs[None, :], axis=1)
    if fixed.any():
        return False
    return len(np.unique(rows[:, zs[0]])) == len(zs)


@dataclass
class Complement:
    """A subgroup ``H`` of ``Aut(P)`` given by generators and all elements."""

    shape: str
    generators: list[np.ndarray]
    elements: np.ndarray

    @property
    def order(self) -> int:
        return len(self.elements)

    def key(self) -> bytes:
        return self.elements.tobytes()


def _frobenius_rows(A: AutGroup, zs: np.ndarray) -> np.ndarray:
    rows = A.elements.astype(np.int64)
    ident = np.arange(rows.shape[1])
    nontriv = ~np.all(rows == ident, axis=1)
    fpf = ~np.any(rows[:, zs] == zs[None, :], axis=1)
    return rows[nontriv & fpf]


def frobenius_transitive_subgroups(A: AutGroup, n: int, shape: str = "cyclic") -> list[Complement]:
    """Subgroups ``H`` of ``A`` of order ``n`` of the given shape, with every
    nontrivial element fixed-point-free on ``Z(P) - 1`` and ``H`` transitive
    there.  Returned in canonical order; conjugates are not merged."""
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    P = A.P
    Z = center(P)
    zs = Z.elements[1:]
    if len(zs) != n:
        return []
    if n == 1:
        ident = np.arange(P.order, dtype=np.int64)[None]
        return [Complement("cyclic", [], ident)] if shape in ("cyclic", "any") else []
    if shape == "any":
        out = []
        for s in ("cyclic", "quaternion8", "order24"):
            out.extend(frobenius_transitive_subgroups(A, n, s))
        return out
    F = _frobenius_rows(A, zs)
    if not len(F):
        return []
    orders = _row_orders(F, n)
    found: dict[bytes, Complement] = {}
    if shape == "cyclic":
        for a in F[orders == n]:
            H = _closure_rows([a], n)
            if H is not None and len(H) == n and _acts_regularly(H, zs):
                c = Complement("cyclic", [a], H)
                found.setdefault(c.key(), c)
    elif shape == "quaternion8" and n == 8:
        fours = F[orders == 4]
        for i, a in enumerate(fours):
            a2 = a[a]
            for b in fours[i + 1:]:
                if not np.array_equal(b[b], a2):
                    continue
                H = _closure_rows([a, b], 8)
                if H is not None and len(H) == 8 and _acts_regularly(H, zs):
                    c = Complement("quaternion8", [a, b], H)
                    found.setdefault(c.key(), c)
    elif shape == "order24" and n == 24:
        # C3 x| C8 with the C8 inverting the C3
        threes, eights = F[orders == 3], F[orders == 8]
        for a in threes:
            ainv = np.empty_like(a)
            ainv[a] = np.arange(len(a))
            for b in eights:
                binv = np.empty_like(b)
                binv[b] = np.arange(len(b))
                if not np.array_equal(b[a[binv]], ainv):  # b^-1 a b = a^-1
                    continue
                H = _closure_rows([a, b], 24)
                if H is not None and len(H) == 24 and _acts_regularly(H, zs):
                    c = Complement("order24", [a, b], H)
                    found.setdefault(c.key(), c)
    return [found[k] for k in sorted(found)]


def conjugacy_representatives(
    complements: list[Complement], conjugators: list[np.ndarray]
) -> list[Complement]:
    """One complement per orbit under conjugation by the group generated by
    ``conjugators`` (generators of Aut(P))."""
    by_key = {c.key(): c for c in complements}
    remaining = set(by_key)
    reps = []
    invs = []
    for g in conjugators:
        gi = np.empty_like(g)
        gi[g] = np.arange(len(g))
        invs.append(gi)
    for k in sorted(by_key):
        if k not in remaining:
            continue
        reps.append(by_key[k])
        queue = [by_key[k].elements]
        remaining.discard(k)
        while queue:
            H = queue.pop()
            for g, gi in zip(conjugators, invs):
                # g^-1 h g, with g applied last: row = g[h[gi]]
                C = sort_rows(g[H[:, gi]])
                ck = C.tobytes()
                if ck in remaining:
                    remaining.discard(ck)
                    queue.append(C)
    return reps


# ---------------------------------------------------------------------------
# semilinear maps of Heisenberg groups


@dataclass
class SemilinearMap:
    automorphism: Automorphism
    u: int
    v: int
    f: int
    center_multiplier: int  # Z(P) acts by c -> (u v) c^(p^f)


def semilinear_complement(P: CayleyGroup, u: int, v: int | None = None, f: int = 0) -> SemilinearMap:
    """The map ``(a, b, c) -> (u a^s, v b^s, u v c^s)`` on ``heisenberg(q)``
    with ``s`` the Frobenius ``x -> x^(p^f)``.  Field elements are given as
    indices of :class:`GF` (``F.exp[k]`` is the ``k``-th power of the
    generator)."""
    F = P._cache.get("field")
    if F is None:
        raise ValueError("P must come from heisenberg(q)")
    q = F.q
    if not 0 <= f < F.k:
        raise ValueError(f"Frobenius power f must lie in [0, {F.k})")
    v = 1 if v is None else v
    if u == 0 or v == 0:
        raise ValueError("u and v must be units")
    idx = np.arange(P.order)
    a, b, c = idx % q, (idx // q) % q, idx // (q * q)
    s = F.frobenius(f)
    uv = int(F.mul[u, v])
    na = F.mul[u, s[a]]
    nb = F.mul[v, s[b]]
    nc = F.mul[uv, s[c]]
    perm = na + q * nb + q * q * nc
    return SemilinearMap(Automorphism(P, perm), u, v, f, uv)


def semilinear_group(P: CayleyGroup) -> AutGroup:
    """All maps :func:`semilinear_complement` can produce, as an AutGroup
    of order ``(q-1)^2 k``."""
    F: GF = P._cache["field"]
    rows = []
    units = F.exp.tolist()
    for f in range(F.k):
        for u in units:
            for v in units:
                rows.append(semilinear_complement(P, u, v, f).automorphism.perm)
    rows = sort_rows(np.array(rows))
    return AutGroup(P, rows.astype(np.int16), complete=False)

