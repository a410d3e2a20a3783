"""Dense multiplication-table groups and their structural subgroups.

Elements are the integers ``0..n-1`` and index 0 is always the identity.
Every operation here is a pure function of an immutable :class:`CayleyGroup`;
expensive results (classes, generators, element orders) are memoized on the
instance.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from .arith import factor, is_prime_power

FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 100_000
MAX_CAYLEY_ORDER = 10_000

NOT_NILPOTENT = "not nilpotent"


class GroupFormatError(ValueError):
    """A multiplication table violates the group axioms."""


def index_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def check_table(mul: np.ndarray, *, associativity: bool = True) -> None:
    """Raise :class:`GroupFormatError` with a row/position diagnostic if
    ``mul`` is not the table of a group with identity 0."""
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise GroupFormatError(f"table must be a non-empty square, got shape {mul.shape}")
    n = mul.shape[0]
    bad = np.argwhere((mul < 0) | (mul >= n))
    if len(bad):
        i, j = bad[0]
        raise GroupFormatError(f"mul[{i}][{j}] = {mul[i, j]} is out of range 0..{n - 1}")
    ar = np.arange(n)
    if not np.array_equal(mul[0], ar) or not np.array_equal(mul[:, 0], ar):
        row = np.flatnonzero(mul[0] != ar)
        col = np.flatnonzero(mul[:, 0] != ar)
        pos = f"mul[0][{row[0]}]" if len(row) else f"mul[{col[0]}][0]"
        raise GroupFormatError(f"index 0 is not the identity ({pos} is wrong)")
    srt = np.sort(mul, axis=1)
    rows = np.flatnonzero(np.any(srt != ar, axis=1))
    if len(rows):
        i = rows[0]
        j = int(np.flatnonzero(srt[i] != ar)[0])
        raise GroupFormatError(f"row {i} is not a permutation (value {j} missing)")
    srt = np.sort(mul, axis=0)
    cols = np.flatnonzero(np.any(srt != ar[:, None], axis=0))
    if len(cols):
        j = cols[0]
        i = int(np.flatnonzero(srt[:, j] != ar)[0])
        raise GroupFormatError(f"column {j} is not a permutation (value {i} missing)")
    if not associativity:
        return
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            left = mul[mul[a]]
            right = mul[a][mul]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise GroupFormatError(f"associativity fails at ({a}, {b}, {c})")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
        bad = np.flatnonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])
        if len(bad):
            k = bad[0]
            raise GroupFormatError(f"associativity fails at ({a[k]}, {b[k]}, {c[k]})")


class CayleyGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul, *, name: str = "", check: bool = True):
        mul = np.asarray(mul)
        n = mul.shape[0] if mul.ndim == 2 else 0
        if check:
            check_table(mul)
        self.mul = np.ascontiguousarray(mul, dtype=index_dtype(n))
        self.mul.setflags(write=False)
        self.order = n
        self.name = name
        self._cache: dict = {}

    @classmethod
    def from_table(cls, mul, *, name: str = "", check: bool = True) -> "CayleyGroup":
        """Build from a table whose identity may sit at any index."""
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        ar = np.arange(n)
        ids = [i for i in range(n) if np.array_equal(mul[i], ar)]
        if not ids:
            raise GroupFormatError("table has no identity element")
        e = ids[0]
        if e == 0:
            return cls(mul, name=name, check=check)
        perm = ar.copy()
        perm[[0, e]] = perm[[e, 0]]
        return cls(perm[mul[np.ix_(perm, perm)]], name=name, check=check)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<CayleyGroup{label} of order {self.order}>"

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.argmin(self.mul, axis=1).astype(self.mul.dtype)
        inv.setflags(write=False)
        return inv

    @cached_property
    def elem_order(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            done = (cur == 0) & (out == 0)
            out[done] = k
            if out.all():
                break
            cur = self.mul[cur, ar]
            k += 1
        out.setflags(write=False)
        return out

    @cached_property
    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.order).encode())
        h.update(self.mul.astype("<i4").tobytes())
        return h.hexdigest()

    def op(self, *elts: int) -> int:
        return reduce(lambda a, b: int(self.mul[a, b]), elts, 0)

    def power(self, g: int, k: int) -> int:
        k %= int(self.elem_order[g])
        out, base = 0, int(g)
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def powers(self, elts: np.ndarray, k: int) -> np.ndarray:
        """Vectorized ``x**k`` for every ``x`` in ``elts`` (k >= 0)."""
        elts = np.asarray(elts)
        out = np.zeros_like(elts)
        base = elts.copy()
        while k:
            if k & 1:
                out = self.mul[out, base]
            base = self.mul[base, base]
            k >>= 1
        return out

    def comm(self, a, b):
        """Commutator ``a^-1 b^-1 a b`` (vectorized)."""
        m, inv = self.mul, self.inv
        return m[m[inv[a], inv[b]], m[a, b]]

    def conj(self, g, x):
        """``x^-1 g x`` (vectorized)."""
        m = self.mul
        return m[m[self.inv[x], g], x]

    @property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order))

    @property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.zeros(1, dtype=np.int64))

    def subgroup(self, elements) -> "Subgroup":
        return Subgroup(self, np.unique(np.asarray(elements, dtype=np.int64)))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of a :class:`CayleyGroup`, stored as a sorted index set."""

    parent: CayleyGroup
    elements: np.ndarray

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.elements] = True
        return m

    def __contains__(self, g) -> bool:
        return bool(self.mask[g])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(self.elements, other.elements)
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements.tobytes()))

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.elements].all())

    def key(self) -> bytes:
        return self.elements.astype(np.int32).tobytes()

    def is_closed(self) -> bool:
        G = self.parent
        if self.elements[0] != 0:
            return False
        prod = G.mul[np.ix_(self.elements, self.elements)]
        return bool(self.mask[prod].all() and self.mask[G.inv[self.elements]].all())

    @cached_property
    def generators(self) -> list[int]:
        return _greedy_generators(self.parent, self.elements)

    def as_group(self, name: str = "") -> CayleyGroup:
        """The subgroup as a standalone group; element ``k`` of the result is
        ``self.elements[k]``."""
        G = self.parent
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[self.elements] = np.arange(self.order)
        sub = pos[G.mul[np.ix_(self.elements, self.elements)]]
        return CayleyGroup(sub, name=name, check=False)


def _closure(G: CayleyGroup, start: np.ndarray, gens: list[int]) -> np.ndarray:
    """Subgroup generated by the subgroup ``start`` and ``gens``."""
    mask = np.zeros(G.order, dtype=bool)
    mask[start] = True
    frontier = np.asarray(start, dtype=np.int64)
    gens = [int(g) for g in gens]
    all_gens = np.asarray(gens, dtype=np.int64)
    if not len(all_gens):
        return np.flatnonzero(mask)
    while len(frontier):
        nxt = G.mul[np.ix_(frontier, all_gens)].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return np.flatnonzero(mask)


def generated_subgroup(G: CayleyGroup, gens, within: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` together with ``within`` (if given)."""
    start = within.elements if within is not None else np.zeros(1, dtype=np.int64)
    gens = [int(g) for g in np.atleast_1d(np.asarray(gens, dtype=np.int64))]
    if within is not None:
        gens = list(within.generators) + gens
    return Subgroup(G, _closure(G, start, gens))


def _greedy_generators(G: CayleyGroup, elements: np.ndarray) -> list[int]:
    """Deterministic short generating list: repeatedly add the element of
    largest order (least index on ties) not yet generated."""
    target = len(elements)
    gens: list[int] = []
    cur = np.zeros(1, dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    orders = G.elem_order[elements]
    ranking = elements[np.lexsort((elements, -orders))]
    for g in ranking:
        if len(cur) == target:
            break
        if mask[g]:
            continue
        gens.append(int(g))
        cur = _closure(G, cur, gens)
        mask[cur] = True
    return gens


def generators(G: CayleyGroup) -> list[int]:
    if "gens" not in G._cache:
        G._cache["gens"] = _greedy_generators(G, np.arange(G.order))
    return G._cache["gens"]


def normal_closure(G: CayleyGroup, elts, within: Subgroup | None = None) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``elts`` (and ``within``)."""
    gens_G = generators(G)
    S = generated_subgroup(G, elts, within)
    while True:
        sg = np.asarray(S.generators, dtype=np.int64)
        if not len(sg):
            return S
        conj = np.unique(G.conj(sg[:, None], np.asarray(gens_G)[None, :]).ravel())
        new = conj[~S.mask[conj]]
        if not len(new):
            return S
        S = generated_subgroup(G, new, S)


def is_normal(G: CayleyGroup, S: Subgroup) -> bool:
    gens_G = np.asarray(generators(G))
    sg = np.asarray(S.generators)
    if not len(sg) or not len(gens_G):
        return True
    return bool(S.mask[G.conj(sg[:, None], gens_G[None, :])].all())


def conjugacy_classes(G: CayleyGroup) -> list[np.ndarray]:
    """Classes ordered by least element; the identity class comes first."""
    if "classes" in G._cache:
        return G._cache["classes"]
    n = G.order
    ar = np.arange(n)
    label = np.full(n, -1, dtype=np.int64)
    classes = []
    for g in range(n):
        if label[g] >= 0:
            continue
        cls = np.unique(G.mul[G.mul[G.inv, g], ar])
        label[cls] = len(classes)
        classes.append(cls)
    G._cache["classes"] = classes
    G._cache["class_of"] = label
    return classes


def class_of(G: CayleyGroup) -> np.ndarray:
    conjugacy_classes(G)
    return G._cache["class_of"]


def centralizer(G: CayleyGroup, X) -> Subgroup:
    """Elements commuting with every element of ``X`` (index list or Subgroup)."""
    if isinstance(X, Subgroup):
        X = X.generators
    X = np.asarray(list(X), dtype=np.int64)
    if not len(X):
        return G.whole
    ok = np.all(G.mul[:, X] == G.mul[X, :].T, axis=1)
    return Subgroup(G, np.flatnonzero(ok))


def center(G: CayleyGroup) -> Subgroup:
    if "center" not in G._cache:
        G._cache["center"] = centralizer(G, generators(G))
    return G._cache["center"]


def normalizer(G: CayleyGroup, S: Subgroup) -> Subgroup:
    sg = np.asarray(S.generators, dtype=np.int64)
    if not len(sg):
        return G.whole
    conj = G.conj(sg[None, :], np.arange(G.order)[:, None])
    return Subgroup(G, np.flatnonzero(S.mask[conj].all(axis=1)))


def commutator_subgroup(G: CayleyGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]`` for normal subgroups ``A`` and ``B`` of ``G``."""
    a = np.asarray(A.generators, dtype=np.int64)
    b = np.asarray(B.generators, dtype=np.int64)
    if not len(a) or not len(b):
        return G.trivial
    comms = np.unique(G.comm(a[:, None], b[None, :]).ravel())
    return normal_closure(G, comms)


def derived_subgroup(G: CayleyGroup) -> Subgroup:
    if "derived" not in G._cache:
        G._cache["derived"] = commutator_subgroup(G, G.whole, G.whole)
    return G._cache["derived"]


def lift(S: Subgroup, T: Subgroup) -> Subgroup:
    """Push a subgroup ``T`` of ``S.as_group()`` back into ``S.parent``."""
    return Subgroup(S.parent, np.sort(S.elements[T.elements]))


def subgroup_derived(S: Subgroup) -> Subgroup:
    """Derived subgroup of an arbitrary subgroup ``S`` of its parent."""
    return lift(S, derived_subgroup(S.as_group()))


def lower_central_series(G: CayleyGroup) -> list[Subgroup]:
    series = [G.whole]
    while True:
        nxt = commutator_subgroup(G, series[-1], G.whole)
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def upper_central_series(G: CayleyGroup) -> list[Subgroup]:
    series = [G.trivial]
    gens = np.asarray(generators(G), dtype=np.int64)
    ar = np.arange(G.order)
    while True:
        cur = series[-1]
        if not len(gens):
            nxt = G.whole
        else:
            comm = G.comm(ar[:, None], gens[None, :])
            nxt = Subgroup(G, np.flatnonzero(cur.mask[comm].all(axis=1)))
        if nxt.order == cur.order:
            return series
        series.append(nxt)


def nilpotence_class(G: CayleyGroup) -> int | str:
    lcs = lower_central_series(G)
    if lcs[-1].order != 1:
        return NOT_NILPOTENT
    return len(lcs) - 1


def exponent(G: CayleyGroup) -> int:
    return int(np.lcm.reduce(np.unique(G.elem_order)))


def derived_series(G: CayleyGroup) -> list[Subgroup]:
    series = [G.whole]
    while True:
        H = series[-1].as_group()
        D = derived_subgroup(H)
        if D.order == H.order:
            return series
        series.append(lift(series[-1], D))


def is_solvable(G: CayleyGroup) -> bool:
    return derived_series(G)[-1].order == 1


def is_perfect(G: CayleyGroup) -> bool:
    return derived_subgroup(G).order == G.order


def is_abelian(G: CayleyGroup) -> bool:
    return center(G).order == G.order


def is_p_group(G: CayleyGroup) -> int | None:
    """The prime ``p`` when ``|G|`` is a nontrivial power of ``p``."""
    pa = is_prime_power(G.order)
    return pa[0] if pa else None


def join(G: CayleyGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``AB`` for normal subgroups ``A`` and ``B``."""
    return Subgroup(G, np.unique(G.mul[np.ix_(A.elements, B.elements)]))


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(A.parent, A.elements[B.mask[A.elements]])


def class_closures(G: CayleyGroup) -> list[Subgroup]:
    """Normal closure of each nontrivial conjugacy class, deduplicated."""
    if "class_closures" in G._cache:
        return G._cache["class_closures"]
    seen: dict[bytes, Subgroup] = {}
    for cls in conjugacy_classes(G)[1:]:
        S = generated_subgroup(G, cls)
        seen.setdefault(S.key(), S)
    out = sorted(seen.values(), key=lambda S: (S.order, S.key()))
    G._cache["class_closures"] = out
    return out


def normal_subgroup_lattice(G: CayleyGroup) -> list[Subgroup]:
    """Every normal subgroup: closures of single classes, then all joins
    iterated to a fixpoint.  Sorted by order."""
    found: dict[bytes, Subgroup] = {G.trivial.key(): G.trivial}
    atoms = class_closures(G)
    for S in atoms:
        found.setdefault(S.key(), S)
    frontier = list(found.values())
    while frontier:
        new = []
        for A in frontier:
            for B in atoms:
                if B.issubset(A):
                    continue
                J = join(G, A, B)
                if J.key() not in found:
                    found[J.key()] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=lambda S: (S.order, S.key()))


def minimal_normal_subgroups(G: CayleyGroup) -> list[Subgroup]:
    closures = class_closures(G)
    return [
        S for S in closures
        if not any(T.order < S.order and T.issubset(S) for T in closures)
    ]


def socle(G: CayleyGroup) -> Subgroup:
    out = G.trivial
    for S in minimal_normal_subgroups(G):
        out = join(G, out, S)
    return out


def p_core(G: CayleyGroup, p: int) -> Subgroup:
    """Largest normal ``p``-subgroup, as the join of all class closures of
    ``p``-power order."""
    out = G.trivial
    for S in class_closures(G):
        if is_prime_power(S.order) and is_prime_power(S.order)[0] == p:
            out = join(G, out, S)
    return out


def sylow(G: CayleyGroup, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, by climbing normalizers from the trivial group."""
    f = factor(G.order)
    if p not in f:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    target = p ** f[p]
    P = G.trivial
    while P.order < target:
        N = normalizer(G, P)
        cand = N.elements[~P.mask[N.elements]]
        orders = G.elem_order[cand]
        step = None
        for x, o in zip(cand, orders):
            m = o // _p_part(int(o), p)
            y = G.power(int(x), int(m))
            if not P.mask[y]:
                step = y
                break
        if step is None:
            raise AssertionError("normalizer climbing stalled")
        P = generated_subgroup(G, [step], P)
    return P


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def coset_labels(G: CayleyGroup, N: Subgroup) -> np.ndarray:
    """Label of ``gN`` for each ``g``: the least element of the coset."""
    return G.mul[:, N.elements].min(axis=1).astype(np.int64)


def quotient(G: CayleyGroup, N: Subgroup, name: str = "") -> CayleyGroup:
    """``G/N``; coset ``k`` of the result is the ``k``-th least coset
    representative, so the identity coset is index 0."""
    if not is_normal(G, N):
        raise ValueError("quotient by a non-normal subgroup")
    lab = coset_labels(G, N)
    reps = np.unique(lab)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    table = pos[lab[G.mul[np.ix_(reps, reps)]]]
    Q = CayleyGroup(table, name=name, check=False)
    Q._cache["projection"] = pos[lab]
    return Q


def frattini_p_group(G: CayleyGroup) -> Subgroup:
    """Frattini subgroup of a ``p``-group: ``G' G^p``."""
    p = is_p_group(G)
    if p is None:
        return G.trivial
    pth = np.unique(G.powers(np.arange(G.order), p))
    return normal_closure(G, pth, derived_subgroup(G))


def element_profile(G: CayleyGroup) -> tuple:
    vals, counts = np.unique(G.elem_order, return_counts=True)
    return tuple(zip(vals.tolist(), counts.tolist()))


def class_size_profile(G: CayleyGroup) -> tuple:
    sizes = sorted(len(c) for c in conjugacy_classes(G))
    return tuple(sizes)

