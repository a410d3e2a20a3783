"""Isomorphism testing for Cayley groups by backtracking over generator images.

A generating sequence ``g_1, ..., g_k`` of ``G`` is fixed.  Level ``j`` of
the search assigns an image to ``g_j``; all candidates for that image are
tested together as a batch: the images of the new elements of
``<g_1..g_j>`` are propagated along a spanning tree, and every relation
``x g_i`` inside the subgroup is checked with vectorized lookups.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .group import (
    MAX_CAYLEY_ORDER,
    CayleyGroup,
    center,
    class_of,
    class_size_profile,
    conjugacy_classes,
    derived_subgroup,
    element_profile,
)

BATCH_CELLS = 4_000_000


class TooLargeError(ValueError):
    """Group exceeds the size supported by the backtracking search."""


def element_labels(G: CayleyGroup) -> np.ndarray:
    """Isomorphism-invariant label per element: order and class size."""
    if "labels" not in G._cache:
        sizes = np.array([len(c) for c in conjugacy_classes(G)], dtype=np.int64)
        G._cache["labels"] = G.elem_order.astype(np.int64) * (G.order + 1) + sizes[class_of(G)]
    return G._cache["labels"]


def _greedy_sequence(G: CayleyGroup) -> list[int]:
    """Generators chosen to maximise the growth of the generated subgroup
    (so relations constrain each level), then to minimise candidate counts."""
    from .group import generated_subgroup

    labels = element_labels(G)
    vals, counts = np.unique(labels, return_counts=True)
    weight = dict(zip(vals.tolist(), counts.tolist()))
    order = sorted(range(1, G.order), key=lambda x: (weight[int(labels[x])], x))
    seq: list[int] = []
    inside = np.zeros(G.order, dtype=bool)
    inside[0] = True
    while not inside.all():
        best_key, best, best_S = None, None, None
        seen_sizes: set[bytes] = set()
        for x in order:
            if inside[x]:
                continue
            S = generated_subgroup(G, seq + [x])
            k = S.key()
            if k in seen_sizes:
                continue
            seen_sizes.add(k)
            key = (-S.order, weight[int(labels[x])], x)
            if best_key is None or key < best_key:
                best, best_key, best_S = x, key, S
            if S.order == G.order:
                break
        seq.append(best)
        inside = best_S.mask.copy()
    return seq


@dataclass
class _Level:
    new: list[np.ndarray]      # new elements, one array per BFS layer
    parent: list[np.ndarray]
    gen: list[np.ndarray]
    check_x: np.ndarray        # pairs (x, i) whose products are checked
    check_i: np.ndarray
    members: np.ndarray        # all elements of the subgroup after this level


def _plan(G: CayleyGroup, seq: Sequence[int]) -> list[_Level]:
    levels = []
    inside = np.zeros(G.order, dtype=bool)
    inside[0] = True
    members = np.array([0])
    for j in range(len(seq)):
        gens = np.asarray(seq[: j + 1])
        old_members = members
        frontier = members
        layers, parents, gidx = [], [], []
        while len(frontier):
            prod = G.mul[np.ix_(frontier, gens)]  # frontier x gens
            fx = np.repeat(frontier, len(gens))
            fi = np.tile(np.arange(len(gens)), len(frontier))
            y = prod.ravel().astype(np.int64)
            fresh = ~inside[y]
            y, fx, fi = y[fresh], fx[fresh], fi[fresh]
            y, first = np.unique(y, return_index=True)
            inside[y] = True
            layers.append(y)
            parents.append(fx[first])
            gidx.append(fi[first])
            frontier = y
        layers, parents, gidx = layers[:-1] or [], parents[:-1] or [], gidx[:-1] or []
        members = np.flatnonzero(inside)
        new_elems = np.concatenate(layers) if layers else np.zeros(0, dtype=np.int64)
        # checks: (every member, new generator) and (new element, old generator)
        cx = [members, np.repeat(new_elems, j)]
        ci = [np.full(len(members), j), np.tile(np.arange(j), len(new_elems))]
        levels.append(
            _Level(layers, parents, gidx, np.concatenate(cx), np.concatenate(ci), members)
        )
        del old_members
    return levels


class Search:
    """Backtracking enumeration of isomorphisms ``G -> H``.

    ``candidates(j)`` may restrict the images tried for the ``j``-th
    generator; by default all elements of ``H`` with the same label.  With
    ``first_up_to_conjugacy`` the first generator is only sent to class
    representatives of ``H``; composing with inner automorphisms of ``H``
    shows that this still finds an isomorphism whenever one exists.
    """

    def __init__(
        self,
        G: CayleyGroup,
        H: CayleyGroup,
        seq: Sequence[int] | None = None,
        candidates: Callable[[int], np.ndarray] | None = None,
        labels: bool = True,
        first_up_to_conjugacy: bool = False,
    ):
        if G.order != H.order:
            raise ValueError("orders differ")
        self.G, self.H = G, H
        self.seq = list(seq) if seq is not None else _greedy_sequence(G)
        self.levels = _plan(G, self.seq)
        if not self.levels or self.levels[-1].members.size != G.order:
            if G.order > 1:
                raise ValueError("sequence does not generate G")
        lg, lh = element_labels(G), element_labels(H)
        self._cands = []
        for j, g in enumerate(self.seq):
            c = np.flatnonzero(lh == lg[g]) if labels else np.arange(1, H.order)
            if candidates is not None:
                c = np.intersect1d(c, candidates(j))
            if j == 0 and first_up_to_conjugacy:
                reps = np.array([int(k[0]) for k in conjugacy_classes(H)])
                c = np.intersect1d(c, reps)
            self._cands.append(c)

    def _extend(self, j: int, img: np.ndarray, hvals: np.ndarray) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        H = self.H.mul
        Gm = self.G.mul
        L = self.levels[j]
        cands = self._cands[j]
        per = max(1, BATCH_CELLS // max(1, self.G.order))
        for lo in range(0, len(cands), per):
            c = cands[lo: lo + per]
            B = len(c)
            batch = np.repeat(img[None, :], B, axis=0)
            hv = np.concatenate([np.repeat(hvals[None, :], B, axis=0), c[:, None]], axis=1)
            for y, par, gi in zip(L.new, L.parent, L.gen):
                batch[:, y] = H[batch[:, par], hv[:, gi]]
            lhs = batch[:, Gm[L.check_x, np.asarray(self.seq)[L.check_i]]]
            rhs = H[batch[:, L.check_x], hv[:, L.check_i]]
            ok = np.all(lhs == rhs, axis=1)
            if not ok.any():
                continue
            sub = np.sort(batch[np.ix_(ok, L.members)], axis=1)
            inj = np.all(np.diff(sub, axis=1) != 0, axis=1)
            idx = np.flatnonzero(ok)[inj]
            for k in idx:
                yield batch[k], hv[k]

    def __iter__(self) -> Iterator[np.ndarray]:
        if self.G.order == 1:
            yield np.zeros(1, dtype=np.int64)
            return
        img = np.full(self.G.order, -1, dtype=np.int64)
        img[0] = 0
        stack = [(0, self._extend(0, img, np.zeros(0, dtype=np.int64)))]
        last = len(self.levels) - 1
        while stack:
            j, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                continue
            im, hv = nxt
            if j == last:
                yield im.copy()
            else:
                stack.append((j + 1, self._extend(j + 1, im.copy(), hv.copy())))

    def all(self) -> np.ndarray:
        """Every isomorphism, as rows of an array (element -> image)."""
        rows = list(self)
        dtype = np.int16 if self.H.order < 2**15 else np.int32
        return np.asarray(rows, dtype=dtype).reshape(len(rows), self.G.order)


def isomorphisms(G: CayleyGroup, H: CayleyGroup) -> Iterator[np.ndarray]:
    if G.order != H.order:
        return iter(())
    return iter(Search(G, H))


@dataclass
class IsoResult:
    isomorphic: bool
    witness: np.ndarray | None
    reason: str

    def __bool__(self) -> bool:
        return self.isomorphic


def invariant_mismatch(G: CayleyGroup, H: CayleyGroup) -> str | None:
    if G.order != H.order:
        return "order"
    checks = [
        ("element orders", element_profile),
        ("center order", lambda X: center(X).order),
        ("derived order", lambda X: derived_subgroup(X).order),
        ("class sizes", class_size_profile),
    ]
    for name, f in checks:
        if f(G) != f(H):
            return name
    return None


def is_isomorphic(G: CayleyGroup, H: CayleyGroup, limit: int = MAX_CAYLEY_ORDER) -> IsoResult:
    """Decide ``G = H``; the witness maps element ``g`` of ``G`` to ``witness[g]``."""
    if max(G.order, H.order) > limit:
        raise TooLargeError(f"order {max(G.order, H.order)} exceeds the limit {limit}")
    bad = invariant_mismatch(G, H)
    if bad:
        return IsoResult(False, None, f"{bad} differ")
    if G.content_hash == H.content_hash:
        return IsoResult(True, np.arange(G.order), "identical tables")
    for w in Search(G, H, first_up_to_conjugacy=True):
        return IsoResult(True, w, "witness found")
    return IsoResult(False, None, "search exhausted")


def is_isomorphism(G: CayleyGroup, H: CayleyGroup, f: np.ndarray) -> bool:
    f = np.asarray(f)
    if len(np.unique(f)) != G.order or H.order != G.order:
        return False
    return bool(np.array_equal(f[G.mul], H.mul[np.ix_(f, f)]))
