"""Permutation groups with a base and strong generating set.

Permutations are one-line numpy arrays (``p[i]`` is the image of ``i``) and
act on the right: the product ``a * b`` applies ``a`` first, so as arrays it
is ``b[a]``.  This matches right-regular representations of Cayley groups and
the coset tables produced by coset enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .group import MAX_CAYLEY_ORDER, CayleyGroup, generators


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a`` then ``b``."""
    return b[a]


def invert(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a), dtype=a.dtype)
    return out


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a^-1 b^-1 a b``."""
    return compose(compose(invert(a), invert(b)), compose(a, b))


def is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(len(a))))


@dataclass
class _Level:
    point: int
    gens: list[np.ndarray] = field(default_factory=list)
    trans: dict[int, np.ndarray] = field(default_factory=dict)
    checked: set[tuple[int, int]] = field(default_factory=set)

    def extend_orbit(self) -> None:
        """Grow the orbit/transversal; existing transversal entries are kept."""
        queue = list(self.trans)
        k = 0
        while k < len(queue):
            b = queue[k]
            ub = self.trans[b]
            for s in self.gens:
                c = int(s[b])
                if c not in self.trans:
                    self.trans[c] = s[ub]
                    queue.append(c)
            k += 1


class BSGS:
    """Deterministic Schreier-Sims with incremental generator addition."""

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        self._ident = np.arange(degree, dtype=np.int32)

    def strip(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            b = int(g[L.point])
            if b not in L.trans:
                return g, i
            g = invert(L.trans[b])[g]
        return g, len(self.levels)

    def _first_moved(self, g: np.ndarray) -> int:
        return int(np.flatnonzero(g != self._ident)[0])

    def _add_at(self, y: np.ndarray, upto: int, lo: int) -> None:
        """Install ``y`` as a strong generator on levels ``lo..upto``."""
        if upto == len(self.levels):
            pt = self._first_moved(y)
            self.levels.append(_Level(pt, [], {pt: self._ident.copy()}))
        for l in range(lo, upto + 1):
            self.levels[l].gens.append(y)
            self.levels[l].extend_orbit()

    def add_generator(self, g: np.ndarray) -> bool:
        """Add ``g``; returns False when ``g`` was already a member."""
        g = np.asarray(g, dtype=np.int32)
        y, j = self.strip(g)
        if is_identity(y):
            return False
        self._add_at(y, j, 0)
        self._complete(j)
        return True

    def _complete(self, i: int) -> None:
        while i >= 0:
            L = self.levels[i]
            restart = None
            for b in list(L.trans):
                ub = L.trans[b]
                for xi, x in enumerate(L.gens):
                    if (b, xi) in L.checked:
                        continue
                    L.checked.add((b, xi))
                    c = int(x[b])
                    h = invert(L.trans[c])[x[ub]]
                    if is_identity(h):
                        continue
                    y, j = self.strip(h, i + 1)
                    if not is_identity(y):
                        self._add_at(y, j, i + 1)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
                continue
            if any(
                (b, xi) not in L.checked for b in L.trans for xi in range(len(L.gens))
            ):
                continue
            i -= 1

    def order(self) -> int:
        out = 1
        for L in self.levels:
            out *= len(L.trans)
        return out

    def contains(self, g: np.ndarray) -> bool:
        y, _ = self.strip(np.asarray(g, dtype=np.int32))
        return is_identity(y)

    @property
    def base(self) -> list[int]:
        return [L.point for L in self.levels]


class PermutationGroup:
    """Group generated by permutations of ``0..degree-1``."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        self.degree = degree
        gens = []
        for g in generators:
            g = np.asarray(g, dtype=np.int32)
            if g.shape != (degree,) or len(np.unique(g)) != degree or g.min() < 0 or g.max() >= degree:
                raise ValueError(f"not a permutation of degree {degree}: {g.tolist()}")
            gens.append(g)
        self.generators = gens
        self._bsgs: BSGS | None = None

    def __repr__(self) -> str:
        return f"<PermutationGroup of degree {self.degree} with {len(self.generators)} generators>"

    @classmethod
    def regular(cls, G: CayleyGroup) -> "PermutationGroup":
        """Right-regular representation ``x -> x g`` on generators of ``G``."""
        return cls(G.order, [G.mul[:, g] for g in generators(G)])

    @property
    def bsgs(self) -> BSGS:
        if self._bsgs is None:
            b = BSGS(self.degree)
            for g in self.generators:
                b.add_generator(g)
            self._bsgs = b
        return self._bsgs

    def order(self) -> int:
        return self.bsgs.order()

    def contains(self, g) -> bool:
        return self.bsgs.contains(np.asarray(g, dtype=np.int32))

    def __contains__(self, g) -> bool:
        return self.contains(g)

    def normal_closure(self, elts: Iterable[np.ndarray]) -> "PermutationGroup":
        """Normal closure of ``elts`` in this group."""
        N = PermutationGroup(self.degree)
        N._bsgs = BSGS(self.degree)
        queue = [np.asarray(e, dtype=np.int32) for e in elts]
        while queue:
            x = queue.pop()
            if N._bsgs.add_generator(x):
                N.generators.append(x)
                for g in self.generators:
                    queue.append(compose(compose(invert(g), x), g))
        return N

    def derived_subgroup(self) -> "PermutationGroup":
        gens = self.generators
        comms = [
            commutator(a, b)
            for i, a in enumerate(gens)
            for b in gens[i + 1:]
        ]
        return self.normal_closure([c for c in comms if not is_identity(c)])

    def derived_series(self) -> list["PermutationGroup"]:
        series = [self]
        while True:
            D = series[-1].derived_subgroup()
            if D.order() == series[-1].order():
                return series
            series.append(D)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order() == 1

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order() == self.order()

    def orbit(self, point: int) -> np.ndarray:
        seen = np.zeros(self.degree, dtype=bool)
        seen[point] = True
        frontier = np.array([point])
        gens = np.asarray(self.generators) if self.generators else np.zeros((0, self.degree), dtype=np.int32)
        while len(frontier):
            nxt = gens[:, frontier].ravel()
            nxt = np.unique(nxt[~seen[nxt]])
            seen[nxt] = True
            frontier = nxt
        return np.flatnonzero(seen)

    def elements(self, limit: int = MAX_CAYLEY_ORDER) -> list[np.ndarray]:
        ident = np.arange(self.degree, dtype=np.int32)
        seen = {ident.tobytes(): 0}
        out = [ident]
        k = 0
        while k < len(out):
            g = out[k]
            for s in self.generators:
                h = s[g]
                key = h.tobytes()
                if key not in seen:
                    seen[key] = len(out)
                    out.append(h)
                    if len(out) > limit:
                        raise ValueError(f"group exceeds {limit} elements")
            k += 1
        return out

    def to_cayley(self, name: str = "") -> CayleyGroup:
        elts = self.elements()
        keys = {e.tobytes(): i for i, e in enumerate(elts)}
        arr = np.asarray(elts)
        n = len(elts)
        table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            prod = arr[:, arr[i]]
            table[i] = [keys[r.tobytes()] for r in prod]
        return CayleyGroup(table, name=name)
