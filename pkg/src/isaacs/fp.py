"""Finitely presented groups and coset enumeration.

Words are tuples of nonzero integers: ``k`` stands for the ``k``-th
generator (counting from 1) and ``-k`` for its inverse.  In coset tables
generator ``i`` (from 0) owns column ``2i`` and its inverse column
``2i + 1``, so the inverse of column ``c`` is ``c ^ 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

import numba
import numpy as np

from .perm import PermutationGroup

DEFAULT_MAX_COSETS = 2_000_000


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


Word = tuple[int, ...]


def free_reduce(w) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(w) -> Word:
    return tuple(-x for x in reversed(w))


def cyclic_reduce(w) -> Word:
    w = list(free_reduce(w))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def canonical_relator(w) -> Word:
    """Least rotation of the cyclically reduced word or of its inverse."""
    w = cyclic_reduce(w)
    if not w:
        return w
    cands = []
    for v in (w, inverse_word(w)):
        cands.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(cands, key=lambda v: tuple((abs(x), x < 0) for x in v))


@dataclass
class FpPresentation:
    generators: list[str]
    relators: list[Word]
    name: str = ""

    def word_str(self, w) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            g = self.generators[abs(w[i]) - 1]
            k = (j - i) * (1 if w[i] > 0 else -1)
            parts.append(g if k == 1 else f"{g}^{k}")
            i = j
        return " * ".join(parts)

    def __str__(self) -> str:
        head = f"{self.name} = " if self.name else ""
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"{head}< {','.join(self.generators)} | {rels} >"

    def canonical_relators(self) -> list[Word]:
        """Relators in a fixed order (by length, then letters), so the
        enumeration does not depend on the order they were written in."""
        rels = {canonical_relator(r) for r in self.relators}
        rels.discard(())
        return sorted(rels, key=lambda v: (len(v), tuple((abs(x), x < 0) for x in v)))

    def parse_word(self, text: str) -> Word:
        return _Parser(text, self.generators).whole_word()


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|(.))")


class _Parser:
    def __init__(self, text: str, generators: list[str] | None = None):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("id", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("int", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("sym", m.group(3), m.start(3)))
        self.toks.append(("end", "", len(text)))
        self.i = 0
        self.gens = {g: k + 1 for k, g in enumerate(generators or [])}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise PresentationSyntaxError(f"expected {want!r}, found {t[1] or 'end'!r}", t[2])
        self.i += 1
        return t

    def at(self, value) -> bool:
        t = self.peek()
        return t[0] == "sym" and t[1] == value

    def presentation(self) -> FpPresentation:
        name = ""
        if self.peek()[0] == "id" and self.toks[self.i + 1][1] == "=":
            name = self.take("id")[1]
            self.take("sym", "=")
        self.take("sym", "<")
        gens = [self.take("id")[1]]
        while self.at(","):
            self.take()
            gens.append(self.take("id")[1])
        if len(set(gens)) != len(gens):
            raise PresentationSyntaxError("repeated generator name", self.toks[1][2])
        self.gens = {g: k + 1 for k, g in enumerate(gens)}
        rels = []
        if self.at("|"):
            self.take()
            if not self.at(">"):
                rels.append(self.relation())
                while self.at(","):
                    self.take()
                    rels.append(self.relation())
        self.take("sym", ">")
        self.take("end")
        return FpPresentation(gens, rels, name)

    def relation(self) -> Word:
        w = self.word()
        if self.at("="):
            self.take()
            w = free_reduce(w + inverse_word(self.word()))
        return w

    def whole_word(self) -> Word:
        w = self.word()
        self.take("end")
        return w

    def word(self) -> Word:
        w = self.factor()
        while self.at("*"):
            self.take()
            w = w + self.factor()
        return free_reduce(w)

    def factor(self) -> Word:
        w = self.atom()
        while self.at("^"):
            self.take()
            k = int(self.take("int")[1])
            w = w * k if k >= 0 else inverse_word(w) * (-k)
        return w

    def atom(self) -> Word:
        kind, val, pos = self.peek()
        if kind == "id":
            self.take()
            if val not in self.gens:
                raise PresentationSyntaxError(f"unknown generator {val!r}", pos)
            return (self.gens[val],)
        if kind == "int" and val == "1":
            self.take()
            return ()
        if self.at("("):
            self.take()
            w = self.word()
            self.take("sym", ")")
            return w
        if self.at("["):
            self.take()
            parts = [self.word()]
            while self.at(","):
                self.take()
                parts.append(self.word())
            self.take("sym", "]")
            if len(parts) < 2:
                raise PresentationSyntaxError("commutator needs two entries", pos)
            w = parts[0]
            for v in parts[1:]:
                w = inverse_word(w) + inverse_word(v) + w + v
            return w
        raise PresentationSyntaxError(f"unexpected {val or 'end'!r}", pos)


def parse_presentation(text: str) -> FpPresentation:
    """Parse ``[G =] < gens | rels >``; relators may be written ``w = v``."""
    return _Parser(text).presentation()


def degree25_presentation() -> FpPresentation:
    """The presentation of the nonsolvable Isaacs group of degree 25."""
    text = resources.files("isaacs").joinpath("data/degree25.txt").read_text()
    return parse_presentation(text)


# ---------------------------------------------------------------------------
# coset enumeration (HLT with lookahead)

FULL = 1
COMPLETE = 0


def _columns(w: Word) -> np.ndarray:
    return np.array([2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in w], dtype=np.int32)


@numba.njit(cache=True)
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nk = p[k]
        p[k] = r
        k = nk
    return r


@numba.njit(cache=True)
def _merge(p, queue, qn, k, l):
    a = _rep(p, k)
    b = _rep(p, l)
    if a == b:
        return qn
    if a > b:
        a, b = b, a
    p[b] = a
    queue[qn] = b
    return qn + 1


@numba.njit(cache=True)
def _coincidence(tab, p, queue, a, b):
    ncol = tab.shape[1]
    qn = _merge(p, queue, 0, a, b)
    i = 0
    killed = 0
    while i < qn:
        g = queue[i]
        i += 1
        killed += 1
        for x in range(ncol):
            d = tab[g, x]
            if d < 0:
                continue
            xi = x ^ 1
            if tab[d, xi] == g:
                tab[d, xi] = -1
            m = _rep(p, g)
            n = _rep(p, d)
            if tab[m, x] >= 0:
                qn = _merge(p, queue, qn, n, tab[m, x])
            elif tab[n, xi] >= 0:
                qn = _merge(p, queue, qn, m, tab[n, xi])
            else:
                tab[m, x] = n
                tab[n, xi] = m
    return killed


@numba.njit(cache=True)
def _scan(tab, p, queue, alpha, rel, define, state):
    """Scan ``alpha`` under ``rel``; with ``define`` fill gaps with new
    cosets.  ``state = [next_free, live]``.  Returns False when full."""
    n = len(rel)
    f = alpha
    i = 0
    b = alpha
    j = n - 1
    cap = tab.shape[0]
    while True:
        while i <= j and tab[f, rel[i]] >= 0:
            f = tab[f, rel[i]]
            i += 1
        if i > j:
            if f != b:
                state[1] -= _coincidence(tab, p, queue, f, b)
            return True
        while j >= i and tab[b, rel[j] ^ 1] >= 0:
            b = tab[b, rel[j] ^ 1]
            j -= 1
        if j < i:
            state[1] -= _coincidence(tab, p, queue, f, b)
            return True
        if i == j:
            tab[f, rel[i]] = b
            tab[b, rel[i] ^ 1] = f
            return True
        if not define:
            return True
        if state[0] >= cap:
            return False
        k = state[0]
        state[0] += 1
        state[1] += 1
        tab[f, rel[i]] = k
        tab[k, rel[i] ^ 1] = f


@numba.njit(cache=True)
def _compact(tab, p, state, alpha):
    """Renumber live cosets in order; returns the new index of the first
    live coset at or after ``alpha``."""
    top = state[0]
    new = np.full(top, -1, np.int64)
    k = 0
    na = -1
    for i in range(top):
        if p[i] == i:
            if na < 0 and i >= alpha:
                na = k
            new[i] = k
            k += 1
    if na < 0:
        na = k
    ncol = tab.shape[1]
    for i in range(top):
        if p[i] != i:
            continue
        r = new[i]
        for x in range(ncol):
            d = tab[i, x]
            tab[r, x] = new[d] if d >= 0 else -1
    for i in range(k, top):
        for x in range(ncol):
            tab[i, x] = -1
    for i in range(top):
        p[i] = i
    state[0] = k
    state[1] = k
    return na


@numba.njit(cache=True)
def _enumerate(tab, p, queue, rels, starts, sub, substarts, stats):
    """HLT enumeration.  ``stats = [status, total_defined, lookaheads]``."""
    ncol = tab.shape[1]
    state = np.zeros(2, np.int64)
    state[0] = 1
    state[1] = 1
    nrel = len(starts) - 1
    nsub = len(substarts) - 1
    total = 1
    for s in range(nsub):
        while not _scan(tab, p, queue, 0, sub[substarts[s]:substarts[s + 1]], True, state):
            stats[0] = FULL
            return state[0]
    alpha = 0
    while alpha < state[0]:
        if p[alpha] != alpha:
            alpha += 1
            continue
        r = 0
        moved = False
        while r < nrel + ncol and p[alpha] == alpha:
            if r < nrel:
                before = state[0]
                ok = _scan(tab, p, queue, alpha, rels[starts[r]:starts[r + 1]], True, state)
            else:
                x = r - nrel
                ok = True
                before = state[0]
                if tab[alpha, x] < 0:
                    if state[0] >= tab.shape[0]:
                        ok = False
                    else:
                        k = state[0]
                        state[0] += 1
                        state[1] += 1
                        tab[alpha, x] = k
                        tab[k, x ^ 1] = alpha
            total += state[0] - before
            if ok:
                r += 1
                continue
            # table full: look ahead from every live coset, then compact
            stats[2] += 1
            for beta in range(state[0]):
                if p[beta] != beta:
                    continue
                for t in range(nrel):
                    if p[beta] != beta:
                        break
                    _scan(tab, p, queue, beta, rels[starts[t]:starts[t + 1]], False, state)
            live_alpha = p[alpha] == alpha
            alpha = _compact(tab, p, state, alpha)
            if state[0] >= tab.shape[0]:
                stats[0] = FULL
                stats[1] = total
                return state[0]
            if not live_alpha:
                moved = True
                break
        if not moved:
            alpha += 1
    # final compaction so rows 0..n-1 are the live cosets
    _compact(tab, p, state, 0)
    stats[0] = COMPLETE
    stats[1] = total
    return state[0]


class CosetBoundExceeded(RuntimeError):
    """The enumeration needed more than ``max_cosets`` live cosets."""


@dataclass
class CosetTable:
    presentation: FpPresentation
    table: np.ndarray              # (index, 2 * generators)
    subgroup: list[Word] = field(default_factory=list)
    defined: int = 0               # cosets defined in total
    lookaheads: int = 0

    @property
    def index(self) -> int:
        return len(self.table)

    def is_closed(self) -> bool:
        return bool(np.all(self.table >= 0))

    def is_consistent(self) -> bool:
        """Columns are mutually inverse permutations and every relator
        traces to the identity from every coset."""
        t = self.table
        n = len(t)
        rows = np.arange(n)
        for c in range(0, t.shape[1], 2):
            if not np.array_equal(t[t[:, c], c + 1], rows):
                return False
        for r in self.presentation.relators:
            cur = rows.copy()
            for c in _columns(r):
                cur = t[cur, c]
            if not np.array_equal(cur, rows):
                return False
        return True


def todd_coxeter(
    pres: FpPresentation,
    subgroup: list[Word] | None = None,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup``.

    Raises :class:`CosetBoundExceeded` instead of returning an incomplete
    table."""
    subgroup = [free_reduce(w) for w in (subgroup or [])]
    ncol = 2 * len(pres.generators)
    rels = pres.canonical_relators()
    flat = np.concatenate([_columns(r) for r in rels]) if rels else np.zeros(0, np.int32)
    starts = np.cumsum([0] + [len(r) for r in rels]).astype(np.int64)
    subs = [w for w in subgroup if w]
    sflat = np.concatenate([_columns(w) for w in subs]) if subs else np.zeros(0, np.int32)
    sstarts = np.cumsum([0] + [len(w) for w in subs]).astype(np.int64)
    tab = np.full((max_cosets, ncol), -1, dtype=np.int32)
    p = np.arange(max_cosets, dtype=np.int64)
    queue = np.zeros(max_cosets, dtype=np.int64)
    stats = np.zeros(3, dtype=np.int64)
    n = _enumerate(tab, p, queue, flat, starts, sflat, sstarts, stats)
    if stats[0] != COMPLETE:
        raise CosetBoundExceeded(f"coset enumeration exceeded {max_cosets} cosets")
    table = tab[:n].copy()
    del tab
    return CosetTable(pres, table, subgroup, int(stats[1]), int(stats[2]))


def perm_rep(table: CosetTable) -> PermutationGroup:
    """The generators acting on cosets (right action, one-line arrays)."""
    t = table.table
    return PermutationGroup(table.index, [t[:, c].astype(np.int32) for c in range(0, t.shape[1], 2)])


# ---------------------------------------------------------------------------
# subgroups of a regular permutation group
#
# In a regular action the subgroup generated by some permutations acts
# semiregularly, so its order is the size of the orbit of 0 and an element
# x lies in it exactly when the image of 0 under x lies in that orbit.


class RegularSubgroup:
    def __init__(self, degree: int, gens=()):
        self.degree = degree
        self.gens: list[np.ndarray] = []
        self.orbit = np.zeros(degree, dtype=bool)
        self.orbit[0] = True
        self._points = np.array([0])
        for g in gens:
            self.add(g)

    @property
    def order(self) -> int:
        return int(self.orbit.sum())

    def contains(self, x: np.ndarray) -> bool:
        return bool(self.orbit[x[0]])

    def add(self, x: np.ndarray) -> bool:
        if self.contains(x):
            return False
        self.gens.append(np.asarray(x, dtype=np.int32))
        frontier = self._points
        while len(frontier):
            nxt = np.concatenate([g[frontier] for g in self.gens])
            nxt = np.unique(nxt[~self.orbit[nxt]])
            self.orbit[nxt] = True
            frontier = nxt
        self._points = np.flatnonzero(self.orbit)
        return True


def _inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a), dtype=a.dtype)
    return out


def _conj(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``g^-1 x g`` (right action: apply g^-1, then x, then g)."""
    return g[x[_inv(g)]]


def _comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ai, bi = _inv(a), _inv(b)
    return b[a[bi[ai]]]


def regular_normal_closure(within: RegularSubgroup, elts) -> RegularSubgroup:
    N = RegularSubgroup(within.degree)
    queue = list(elts)
    while queue:
        x = queue.pop()
        if N.add(x):
            queue.extend(_conj(x, g) for g in within.gens)
    return N


def regular_commutator(A: RegularSubgroup, B: RegularSubgroup, within: RegularSubgroup) -> RegularSubgroup:
    """``[A, B]`` for ``A``, ``B`` normal in ``within``."""
    return regular_normal_closure(within, [_comm(a, b) for a in A.gens for b in B.gens])


def regular_derived_series(G: RegularSubgroup) -> list[int]:
    orders = [G.order]
    S = G
    while True:
        D = regular_commutator(S, S, S)
        if D.order == S.order:
            return orders
        orders.append(D.order)
        S = D
        if S.order == 1:
            return orders


# ---------------------------------------------------------------------------
# certificate


@dataclass
class CertificateCheck:
    name: str
    status: str   # "pass", "fail" or "skipped"
    detail: str


@dataclass
class Certificate:
    index: int
    checks: list[CertificateCheck]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failed_stage(self) -> str | None:
        return next((c.name for c in self.checks if c.status == "fail"), None)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def certify_nonsolvable_camina(
    pres: FpPresentation,
    *,
    expected_order: int = 375_000,
    p: int = 5,
    sylow_order: int = 5**6,
    core_order: int = 5**5,
    locate_core: bool = True,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> Certificate:
    """Order, nonsolvability and Sylow arithmetic of ``pres``, and (best
    effort) a normal p-subgroup of order ``core_order`` and class 2."""
    checks = []
    try:
        T = todd_coxeter(pres, [], max_cosets)
    except CosetBoundExceeded as exc:
        return Certificate(0, [CertificateCheck("order", "fail", str(exc))])
    n = T.index
    checks.append(CertificateCheck("order", "pass" if n == expected_order else "fail",
                                   f"{n} cosets over the trivial subgroup"))
    G = RegularSubgroup(n, perm_rep(T).generators)
    series = regular_derived_series(G)
    solvable = series[-1] == 1
    checks.append(CertificateCheck("nonsolvable", "fail" if solvable else "pass",
                                   "derived series orders " + " > ".join(map(str, series))))
    sp = _p_part(n, p)
    checks.append(CertificateCheck("sylow_order", "pass" if sp == sylow_order else "fail",
                                   f"|G|_{p} = {sp}"))
    if locate_core:
        checks.append(_locate_core(pres, T, G, p, core_order))
    else:
        checks.append(CertificateCheck("core_class_two", "skipped", "not requested"))
    return Certificate(n, checks)


def _locate_core(pres, T, G, p, core_order) -> CertificateCheck:
    """Normal closure of the generators of order ``p``; it must be a
    p-group of the given order and nilpotence class 2."""
    gens = perm_rep(T).generators
    pgens = []
    for g in gens:
        x = g.copy()
        k = 1
        while x[0] != 0 and k <= p:
            x = g[x]
            k += 1
        if k == p:
            pgens.append(g)
    K = regular_normal_closure(G, pgens)
    if K.order != core_order:
        return CertificateCheck("core_class_two", "fail",
                                f"normal closure of order-{p} generators has order {K.order}")
    D = regular_commutator(K, K, K)
    D2 = regular_commutator(D, K, K)
    ok = D.order > 1 and D2.order == 1
    return CertificateCheck("core_class_two", "pass" if ok else "fail",
                            f"|K| = {K.order}, |K'| = {D.order}, |[K',K]| = {D2.order}")
