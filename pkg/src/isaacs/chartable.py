"""Character tables by the Burnside-Dixon method, with exact values.

Common eigenvectors of the class-multiplication matrices are found over a
prime field F_l with ``l = 1 (mod exp G)`` and ``l > 2 sqrt|G|``.  Each
character value is then lifted to a cyclotomic integer by counting, for a
class representative ``g``, the multiplicity of every ``o``-th root of unity
among the eigenvalues of ``g`` (``o`` the order of ``g``).  The complex
embedding identifies ``zeta_m = exp(2 pi i / m)`` with a fixed element of
order ``m`` in F_l; any such choice yields a valid table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from . import cyclotomic as cyc
from .arith import is_prime, primitive_root
from .group import (
    CayleyGroup,
    Subgroup,
    center,
    class_of,
    conjugacy_classes,
    derived_subgroup,
    exponent,
    frattini_p_group,
    generators,
    is_p_group,
    is_normal,
    quotient,
)

_TABLES: dict[str, "CharacterTable"] = {}


# ---------------------------------------------------------------------------
# linear algebra over F_l


def _rref(A: np.ndarray, l: int) -> tuple[np.ndarray, list[int]]:
    A = A.copy() % l
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, l) % l
        f = A[:, c].copy()
        f[r] = 0
        A = (A - f[:, None] * A[r][None, :]) % l
        pivots.append(c)
        r += 1
    return A, pivots


def _nullspace(A: np.ndarray, l: int) -> np.ndarray:
    """Basis of {v : A v = 0}, as columns."""
    R, piv = _rref(A, l)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        out[f, j] = 1
        for i, pc in enumerate(piv):
            out[pc, j] = (-R[i, f]) % l
    return out


def _charpoly(M: np.ndarray, l: int) -> np.ndarray:
    """Characteristic polynomial (constant term first) via Hessenberg form."""
    H = M.copy() % l
    n = len(H)
    for c in range(n - 2):
        nz = np.flatnonzero(H[c + 1:, c])
        if not len(nz):
            continue
        k = c + 1 + nz[0]
        if k != c + 1:
            H[[k, c + 1]] = H[[c + 1, k]]
            H[:, [k, c + 1]] = H[:, [c + 1, k]]
        piv_inv = pow(int(H[c + 1, c]), -1, l)
        for i in range(c + 2, n):
            f = H[i, c] * piv_inv % l
            if f:
                H[i] = (H[i] - f * H[c + 1]) % l
                H[:, c + 1] = (H[:, c + 1] + f * H[:, i]) % l
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        # p_k = (x - h_kk) p_{k-1} - sum_i h_ik prod_{j>i} h_{j,j-1} p_{i-1}
        prev = polys[-1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:-1] = (cur[:-1] - H[k - 1, k - 1] * prev) % l
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i, i - 1] % l
            if not prod:
                break
            coef = H[i - 1, k - 1] * prod % l
            if coef:
                q = polys[i - 1]
                cur[: len(q)] = (cur[: len(q)] - coef * q) % l
        polys.append(cur % l)
    return polys[-1]


def _roots(poly: np.ndarray, l: int) -> list[int]:
    x = np.arange(l, dtype=np.int64)
    val = np.zeros(l, dtype=np.int64)
    for c in poly[::-1]:
        val = (val * x + c) % l
    return np.flatnonzero(val == 0).tolist()


def dixon_prime(order: int, exp: int) -> int:
    """Least prime ``l = 1 (mod exp)`` with ``l > 2 sqrt(order)``."""
    l = exp + 1
    while not (is_prime(l) and l * l > 4 * order):
        l += exp
    return l


# ---------------------------------------------------------------------------


@dataclass
class CharacterTable:
    """Irreducible characters of a Cayley group.

    ``values[i, k]`` is the coefficient vector (over zeta_m, ``m`` the
    exponent) of the ``i``-th character on the ``k``-th class; characters are
    sorted by degree and the principal character comes first.
    """

    group: CayleyGroup
    classes: list[np.ndarray]
    values: np.ndarray
    m: int
    prime: int
    _reduced: np.ndarray | None = field(default=None, repr=False)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes], dtype=np.int64)

    @property
    def representatives(self) -> np.ndarray:
        return np.array([int(c[0]) for c in self.classes], dtype=np.int64)

    @property
    def element_orders(self) -> np.ndarray:
        return self.group.elem_order[self.representatives]

    @property
    def degrees(self) -> np.ndarray:
        return self.values[:, 0, 0].copy()

    @property
    def reduced(self) -> np.ndarray:
        if self._reduced is None:
            self._reduced = cyc.reduce(self.values, self.m)
        return self._reduced

    def __len__(self) -> int:
        return len(self.values)

    def value(self, i: int, k: int) -> cyc.CyclotomicValue:
        return cyc.CyclotomicValue(self.values[i, k], self.m)

    def nonzero(self) -> np.ndarray:
        """Boolean (chars x classes) mask of classes where a character is nonzero."""
        return np.any(self.reduced != 0, axis=-1)

    def kernel_classes(self, i: int) -> np.ndarray:
        target = np.zeros(self.reduced.shape[-1], dtype=np.int64)
        target[0] = self.degrees[i]
        return np.all(self.reduced[i] == target[None, :], axis=-1)

    def on_elements(self) -> np.ndarray:
        """Coefficient vectors indexed by (character, element)."""
        return self.values[:, class_of(self.group)]

    def complex_values(self) -> np.ndarray:
        z = np.exp(2j * np.pi * np.arange(self.m) / self.m)
        return self.values @ z


def _class_matrices(G: CayleyGroup, classes: list[np.ndarray]) -> np.ndarray:
    """``A[i, j, k]`` = number of ``x`` in ``C_i`` with ``x^-1 z_k`` in ``C_j``."""
    r = len(classes)
    cls = class_of(G)
    A = np.zeros((r, r, r), dtype=np.int64)
    xs = np.arange(G.order)
    inv = G.inv
    for k, c in enumerate(classes):
        z = int(c[0])
        j = cls[G.mul[inv[xs], z]]
        np.add.at(A, (cls[xs], j, k), 1)
    return A


def _split(A: np.ndarray, sizes: np.ndarray, l: int) -> list[np.ndarray]:
    """Common eigenvectors of the matrices ``A[i]`` (columns, mod l)."""
    r = A.shape[0]
    done: list[np.ndarray] = []
    spaces = [np.eye(r, dtype=np.int64)]
    order = [int(i) for i in np.argsort(sizes, kind="stable") if i != 0]
    for i in order:
        if not spaces:
            break
        M = A[i] % l
        nxt = []
        for B in spaces:
            d = B.shape[1]
            _, piv_rows = _rref(B.T.copy(), l)
            rows = piv_rows
            Binv = _inverse(B[rows], l)
            R = Binv @ (M @ B % l)[rows] % l
            for lam in _roots(_charpoly(R, l), l):
                N = _nullspace((R - lam * np.eye(d, dtype=np.int64)) % l, l)
                sub = B @ N % l
                (done if sub.shape[1] == 1 else nxt).append(sub)
        spaces = nxt
    if spaces:
        raise ArithmeticError("class matrices failed to split the space")
    return [v[:, 0] for v in done]


def _inverse(M: np.ndarray, l: int) -> np.ndarray:
    n = len(M)
    R, piv = _rref(np.hstack([M % l, np.eye(n, dtype=np.int64)]), l)
    if piv[:n] != list(range(n)):
        raise ArithmeticError("singular matrix")
    return R[:, n:]


def character_table(G: CayleyGroup) -> CharacterTable:
    """Exact character table; cached by the content hash of the table."""
    key = G.content_hash
    if key in _TABLES:
        T = _TABLES[key]
        return T if T.group is G else CharacterTable(G, T.classes, T.values, T.m, T.prime)
    classes = conjugacy_classes(G)
    sizes = np.array([len(c) for c in classes], dtype=np.int64)
    r = len(classes)
    n = G.order
    m = exponent(G)
    l = dixon_prime(n, m)
    if r == 1:
        values = np.zeros((1, 1, m), dtype=np.int64)
        values[0, 0, 0] = 1
        T = CharacterTable(G, classes, values, m, l)
        _TABLES[key] = T
        return T
    A = _class_matrices(G, classes)
    vecs = _split(A, sizes, l)
    if len(vecs) != r:
        raise ArithmeticError(f"found {len(vecs)} characters for {r} classes")
    cls = class_of(G)
    reps = np.array([int(c[0]) for c in classes])
    inv_class = cls[G.inv[reps]]
    X = np.zeros((r, r), dtype=np.int64)
    for i, w in enumerate(vecs):
        w = w * pow(int(w[0]), -1, l) % l
        s = int(np.sum(w * w[inv_class] % l * np.array([pow(int(c), -1, l) for c in sizes]) % l) % l)
        target = n * pow(s, -1, l) % l
        deg = next((f for f in range(1, isqrt(n) + 1) if f * f % l == target), None)
        if deg is None:
            raise ArithmeticError("no integral degree found")
        inv_sizes = np.array([pow(int(c), -1, l) for c in sizes], dtype=np.int64)
        X[i] = w * deg % l * inv_sizes % l
    # lift to cyclotomic integers by eigenvalue multiplicities
    Z = pow(primitive_root(l), (l - 1) // m, l)
    values = np.zeros((r, r, m), dtype=np.int64)
    orders = G.elem_order[reps]
    for k in range(r):
        o = int(orders[k])
        g = int(reps[k])
        pw = np.empty(o, dtype=np.int64)
        cur = 0
        for t in range(o):
            pw[t] = cls[cur]
            cur = int(G.mul[cur, g])
        zo = pow(Z, m // o, l)
        # F[t, j] = zeta_o^(-j t)
        jt = np.outer(np.arange(o), np.arange(o)) % o
        zpows = np.array([pow(zo, -e, l) if e else 1 for e in range(o)], dtype=np.int64)
        F = zpows[jt]
        mult = (X[:, pw] @ F) % l * pow(o, -1, l) % l
        values[:, k, :: m // o] = mult
    values = _canonical_order(values, m)
    T = CharacterTable(G, classes, values, m, l)
    _TABLES[key] = T
    return T


def _canonical_order(values: np.ndarray, m: int) -> np.ndarray:
    red = cyc.reduce(values, m)
    principal = np.zeros_like(red[0])
    principal[:, 0] = 1
    keys = [
        (int(values[i, 0, 0]), not np.array_equal(red[i], principal), tuple((-red[i]).ravel().tolist()))
        for i in range(len(values))
    ]
    perm = sorted(range(len(values)), key=lambda i: keys[i])
    return values[perm]


# ---------------------------------------------------------------------------
# checks and derived data


@dataclass
class OrthogonalityReport:
    degree_sum: bool
    rows: bool
    columns: bool
    divides: bool
    linear_count: bool

    def __bool__(self) -> bool:
        return all(vars(self).values())


def check_table(T: CharacterTable) -> OrthogonalityReport:
    G = T.group
    n = G.order
    d = T.degrees
    m = T.m
    sizes = T.sizes
    rows = cyc.reduce(cyc.hermitian_pairing(T.values, T.values, sizes), m)
    want = np.zeros_like(rows)
    want[..., 0] = n * np.eye(len(T), dtype=np.int64)
    cols_in = np.swapaxes(T.values, 0, 1)
    cols = cyc.reduce(cyc.hermitian_pairing(cols_in, cols_in, np.ones(len(T), dtype=np.int64)), m)
    want_c = np.zeros_like(cols)
    want_c[..., 0] = np.diag(n // sizes)
    linear = int(np.sum(d == 1))
    return OrthogonalityReport(
        degree_sum=int(np.sum(d * d)) == n,
        rows=bool(np.array_equal(rows, want)),
        columns=bool(np.array_equal(cols, want_c)),
        divides=bool(np.all(n % d == 0)),
        linear_count=linear == n // derived_subgroup(G).order,
    )


def degree_multiset(G_or_T) -> list[tuple[int, int]]:
    T = G_or_T if isinstance(G_or_T, CharacterTable) else character_table(G_or_T)
    vals, counts = np.unique(T.degrees, return_counts=True)
    return list(zip(vals.tolist(), counts.tolist()))


def format_multiset(ms) -> str:
    return "[" + ",".join(f"<{d},{k}>" for d, k in ms) + "]"


def gagola_characters(G: CayleyGroup) -> list[tuple[int, int]]:
    """``(row, degree)`` for characters nonzero on exactly two classes."""
    T = character_table(G)
    nz = T.nonzero().sum(axis=1)
    return [(int(i), int(T.degrees[i])) for i in np.flatnonzero(nz == 2)]


def _classes_in(T: CharacterTable, N: Subgroup) -> np.ndarray:
    return N.mask[T.representatives]


def irr_over(G: CayleyGroup, N: Subgroup) -> list[int]:
    """Rows whose kernel does not contain ``N``; empty for ``N = 1``."""
    if not is_normal(G, N):
        raise ValueError("N is not normal")
    T = character_table(G)
    inN = _classes_in(T, N)
    return [i for i in range(len(T)) if not np.all(T.kernel_classes(i)[inN])]


def kernel_of(G: CayleyGroup, i: int) -> Subgroup:
    T = character_table(G)
    ker = T.kernel_classes(i)
    return G.subgroup(np.concatenate([c for c, k in zip(T.classes, ker) if k]))


class CaminaDisagreement(AssertionError):
    """The class and character criteria for a Camina pair disagree."""


def camina_by_classes(G: CayleyGroup, N: Subgroup) -> bool:
    cls = class_of(G)
    outside = np.flatnonzero(~N.mask)
    if not len(outside):
        return True
    coset = G.mul[np.ix_(outside, N.elements)]
    return bool(np.all(cls[coset] == cls[outside][:, None]))


def camina_by_characters(G: CayleyGroup, N: Subgroup) -> bool:
    T = character_table(G)
    inN = _classes_in(T, N)
    nz = T.nonzero()
    rows = irr_over(G, N)
    return not bool(np.any(nz[np.ix_(rows, np.flatnonzero(~inN))])) if rows else True


def is_camina_pair(G: CayleyGroup, N: Subgroup) -> bool:
    """``(G, N)`` is a Camina pair.  Both criteria are evaluated and must
    agree.  ``N = 1`` and ``N = G`` are excluded (never Camina pairs)."""
    if not is_normal(G, N):
        raise ValueError("N is not normal")
    if N.order in (1, G.order):
        return False
    a = camina_by_classes(G, N)
    b = camina_by_characters(G, N)
    if a != b:
        raise CaminaDisagreement(f"class test says {a}, character test says {b}")
    return a


@dataclass
class RamificationResult:
    fully_ramified: bool
    reason: str
    multiplicity: int = 0
    constituents: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.fully_ramified


def is_fully_ramified(G: CayleyGroup, N: Subgroup, lam: int) -> RamificationResult:
    """Whether character ``lam`` (a row of the table of ``N``) is fully
    ramified in ``G``: a single constituent ``chi`` of ``lam^G`` with
    ``chi|_N = e lam`` and ``e^2 = |G:N|``."""
    if not is_normal(G, N):
        raise ValueError("N is not normal")
    Ng = N.as_group()
    TN = character_table(Ng)
    lam_el = TN.values[lam][class_of(Ng)]  # per element of N, over zeta_mN
    # invariance: lam(n^g) = lam(n) for generators g
    redN = cyc.reduce(lam_el, TN.m)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[N.elements] = np.arange(N.order)
    for g in generators(G):
        img = pos[G.conj(N.elements, g)]
        if not np.array_equal(redN[img], redN):
            return RamificationResult(False, "not invariant")
    T = character_table(G)
    m = T.m
    lam_G = cyc.rescale(lam_el, TN.m, m)[None]
    chi_N = T.values[:, class_of(G)[N.elements]]
    ip = cyc.reduce(cyc.hermitian_pairing(chi_N, lam_G, np.ones(N.order, dtype=np.int64)), m)[:, 0]
    if np.any(ip[:, 1:]) or np.any(ip[:, 0] % N.order):
        raise ArithmeticError("restriction inner products are not integers")
    mult = ip[:, 0] // N.order
    cons = np.flatnonzero(mult).tolist()
    index = G.order // N.order
    if len(cons) != 1:
        return RamificationResult(False, f"{len(cons)} constituents", 0, cons)
    e = int(mult[cons[0]])
    ok = e * e == index
    return RamificationResult(ok, "ok" if ok else f"e^2 = {e * e} != {index}", e, cons)


# ---------------------------------------------------------------------------
# p-group predicates


def _require_p_group(P: CayleyGroup) -> int:
    p = is_p_group(P)
    if p is None:
        raise ValueError(f"{P!r} is not a p-group")
    return p


def is_extraspecial(P: CayleyGroup) -> bool:
    p = _require_p_group(P)
    Z = center(P)
    if Z.order != p:
        return False
    return derived_subgroup(P) == Z and frattini_p_group(P) == Z


def maximal_subgroups_of_abelian(G: CayleyGroup, A: Subgroup, p: int) -> list[Subgroup]:
    """Index-``p`` subgroups of an abelian ``p``-subgroup ``A``."""
    from .group import generated_subgroup

    Phi = G.subgroup(np.unique(G.powers(A.elements, p)))
    basis = []
    span = Phi
    for x in A.elements:
        if not span.mask[x]:
            basis.append(int(x))
            span = generated_subgroup(G, [x], span)
    k = len(basis)
    out = []
    seen = set()
    for coeffs in np.ndindex(*([p] * k)):
        if not any(coeffs):
            continue
        first = next(c for c in coeffs if c)
        if first != 1:
            continue
        # kernel of the functional: generated by Phi and the null vectors
        gens = []
        for v in np.ndindex(*([p] * k)):
            if sum(a * b for a, b in zip(coeffs, v)) % p == 0 and any(v):
                gens.append(G.op(*[G.power(b, e) for b, e in zip(basis, v)]))
        M = generated_subgroup(G, gens, Phi)
        if M.key() not in seen:
            seen.add(M.key())
            out.append(M)
    return out


def is_semi_extraspecial(P: CayleyGroup) -> bool:
    """For every index-``p`` subgroup ``M`` of ``Z(P)``, ``P/M`` is extraspecial."""
    p = _require_p_group(P)
    Z = center(P)
    if Z.order == 1 or Z.order == P.order:
        return False
    for M in maximal_subgroups_of_abelian(P, Z, p):
        Q = quotient(P, M)
        if Q.order == 1 or not is_extraspecial(Q):
            return False
    return True


def is_ultraspecial(P: CayleyGroup) -> bool:
    if not is_semi_extraspecial(P):
        return False
    D = derived_subgroup(P)
    return (P.order // D.order) == D.order**2


# ---------------------------------------------------------------------------
# abelian dual group (oracle)


def abelian_dual_table(G: CayleyGroup) -> np.ndarray:
    """Linear characters of an abelian group by brute force: all maps
    ``g -> zeta_m^f(g)`` with ``f`` additive, returned as reduced vectors
    over zeta_m indexed (character, element) in canonical order."""
    from .group import is_abelian

    if not is_abelian(G):
        raise ValueError("group is not abelian")
    m = exponent(G)
    gens = generators(G)
    # BFS words for each element in terms of the generators
    word = {0: np.zeros(len(gens), dtype=np.int64)}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = int(G.mul[x, s])
                if y not in word:
                    w = word[x].copy()
                    w[i] += 1
                    word[y] = w
                    nxt.append(y)
        frontier = nxt
    W = np.array([word[g] for g in range(G.order)])
    rows = []
    orders = [int(G.elem_order[s]) for s in gens]
    for exps in np.ndindex(*orders):
        f = (W @ (np.array(exps) * np.array([m // o for o in orders]))) % m
        cand = np.zeros((G.order, m), dtype=np.int64)
        cand[np.arange(G.order), f] = 1
        # keep only well-defined homomorphisms
        ok = np.all((f[G.mul] - f[:, None] - f[None, :]) % m == 0)
        if ok:
            rows.append(cyc.reduce(cand, m))
    uniq = {r.tobytes(): r for r in rows}
    return np.array(sorted(uniq.values(), key=lambda r: tuple((-r).ravel().tolist())))


# ---------------------------------------------------------------------------
# isoclinism


ISOCLINISM_LIMIT = 256


def _commutator_data(G: CayleyGroup):
    """``G/Z``, the derived subgroup as a group, and ``c[a, b]`` = index in
    ``G'`` of ``[a~, b~]`` for coset representatives ``a~, b~``."""
    Z = center(G)
    Q = quotient(G, Z)
    proj = Q._cache["projection"]
    reps = np.zeros(Q.order, dtype=np.int64)
    for g in range(G.order - 1, -1, -1):
        reps[proj[g]] = g
    D = derived_subgroup(G)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[D.elements] = np.arange(D.order)
    c = pos[G.comm(reps[:, None], reps[None, :])]
    return Q, D.as_group(), c


def is_isoclinic(G: CayleyGroup, H: CayleyGroup, limit: int = ISOCLINISM_LIMIT) -> bool:
    """Search isomorphisms ``alpha: G/Z(G) -> H/Z(H)`` for one compatible
    with an isomorphism ``beta: G' -> H'`` on commutators."""
    from .iso import TooLargeError, is_isomorphism, isomorphisms

    QG, DG, cG = _commutator_data(G)
    QH, DH, cH = _commutator_data(H)
    if QG.order != QH.order or DG.order != DH.order:
        return False
    if max(QG.order, DG.order) > limit:
        raise TooLargeError(f"|G/Z| or |G'| exceeds {limit}")
    for alpha in isomorphisms(QG, QH):
        target = cH[np.ix_(alpha, alpha)]
        beta = np.full(DG.order, -1, dtype=np.int64)
        src, dst = cG.ravel(), target.ravel()
        beta[src] = dst
        if not np.array_equal(beta[src], dst) or np.any(beta < 0):
            # commutators of G/Z generate G' in general; extend multiplicatively
            beta = _extend_partial(DG, DH, src, dst)
            if beta is None:
                continue
        if is_isomorphism(DG, DH, beta):
            return True
    return False


def _extend_partial(DG: CayleyGroup, DH: CayleyGroup, src, dst) -> np.ndarray | None:
    beta = np.full(DG.order, -1, dtype=np.int64)
    for s, d in zip(src.tolist(), dst.tolist()):
        if beta[s] not in (-1, d):
            return None
        beta[s] = d
    known = list(np.flatnonzero(beta >= 0))
    changed = True
    while changed:
        changed = False
        for x in list(known):
            for y in list(known):
                z = int(DG.mul[x, y])
                w = int(DH.mul[beta[x], beta[y]])
                if beta[z] == -1:
                    beta[z] = w
                    known.append(z)
                    changed = True
                elif beta[z] != w:
                    return None
    return None if np.any(beta < 0) else beta
