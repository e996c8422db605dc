"""Standard root systems with exact coordinates, and words acting on them.

Crystallographic systems (A, B, D, E, F, G) use ``Fraction`` coordinates in
the usual ambient spaces (dimension n+1 for A_n, 8 for all three E types,
4 for F4, 3 for G2, n otherwise).  The icosahedral systems H3 and H4 are
built from the 120 unit quaternions obtained by letting sign changes and
even coordinate permutations act on 1, (1+i+j+k)/2 and a + i/2 + bj, with
a = (1+sqrt5)/4 and b = (-1+sqrt5)/4; H3 is the 30 of them orthogonal to k.

Group elements are permutations of the indexed root list.  Words are read
left to right: the permutation of ``(i, j)`` applies generator i first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .classify import IsoType
from .qfield import Q5, GOLDEN_A, GOLDEN_B

Word = Sequence[int]
Perm = tuple[int, ...]


def dot(u: Sequence, v: Sequence):
    total = 0
    for a, b in zip(u, v):
        total = total + a * b
    return total


def reflect(u: Sequence, v: Sequence) -> tuple:
    """Image of u under the reflection in the hyperplane orthogonal to v."""
    scale = 2 * dot(u, v) / dot(v, v)
    return tuple(a - scale * b for a, b in zip(u, v))


def _vec(*coords) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coords)


def _e(i: int, dim: int, sign: int = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(sign) if j == i - 1 else Fraction(0) for j in range(dim))


def _half_roots(dim: int, keep) -> list[tuple[Fraction, ...]]:
    out = []
    for eps in product((1, -1), repeat=dim):
        if keep(eps):
            out.append(tuple(Fraction(e, 2) for e in eps))
    return out


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _neg(u):
    return tuple(-a for a in u)


def _pm_pairs(dim: int) -> list[tuple]:
    out = []
    for i in range(1, dim + 1):
        for j in range(i + 1, dim + 1):
            for si in (1, -1):
                for sj in (1, -1):
                    out.append(_add(_e(i, dim, si), _e(j, dim, sj)))
    return out


def _icosian_roots() -> list[tuple[Q5, ...]]:
    a, b = GOLDEN_A, GOLDEN_B
    half = Fraction(1, 2)
    seeds = [
        (Q5(1), Q5(0), Q5(0), Q5(0)),
        (Q5(half), Q5(half), Q5(half), Q5(half)),
        (a, Q5(half), b, Q5(0)),
    ]
    even_perms = [p for p in permutations(range(4)) if _perm_parity(p) == 1]
    seen = set()
    out = []
    for seed in seeds:
        for p in even_perms:
            arranged = tuple(seed[p[i]] for i in range(4))
            for signs in product((1, -1), repeat=4):
                v = tuple(s * c for s, c in zip(signs, arranged))
                if v not in seen:
                    seen.add(v)
                    out.append(v)
    return out


def _perm_parity(p) -> int:
    par = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                par = -par
    return par


def _simple_vectors(t: IsoType, dim: int) -> list[tuple]:
    f, n = t.family, t.rank
    if f == "A":
        return [_add(_e(i, dim), _neg(_e(i + 1, dim))) for i in range(1, n + 1)]
    if f == "B":
        return [_add(_e(i, dim), _neg(_e(i + 1, dim))) for i in range(1, n)] + [_e(n, dim)]
    if f == "D":
        return (
            [_add(_e(i, dim), _neg(_e(i + 1, dim))) for i in range(1, n)]
            + [_add(_e(n - 1, dim), _e(n, dim))]
        )
    if f == "E":
        half = Fraction(1, 2)
        v5 = tuple(half if i in (0, 7) else -half for i in range(8))  # e1+e8 - (sum e_i)/2
        chain = {6: 5, 7: 6, 8: 7}[n]
        simples = [_add(_e(i + 1, 8), _neg(_e(i, 8))) for i in range(chain - 1, 0, -1)]
        simples.append(v5)
        simples.append(_add(_e(1, 8), _e(2, 8)))
        return simples
    if f == "F":
        half = Fraction(1, 2)
        return [
            _add(_e(1, 4), _neg(_e(2, 4))),
            _add(_e(2, 4), _neg(_e(3, 4))),
            _e(3, 4),
            (-half, -half, -half, half),
        ]
    if f == "G":
        return [_vec(1, -1, 0), _vec(-2, 1, 1)]
    raise ValueError(f"no vector model for {t.name}")


@dataclass(frozen=True)
class RootSystem:
    """Exact root list with its simple system and generator permutations."""

    isotype: IsoType
    dim: int
    roots: tuple[tuple, ...]
    simples: tuple[int, ...]  # indices into roots, in canonical symbol order
    index: dict = field(repr=False, compare=False)
    simple_perms: tuple[Perm, ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.simples)

    def simple_vector(self, i: int) -> tuple:
        return self.roots[self.simples[i]]

    def root_index(self, v: tuple) -> int:
        try:
            return self.index[tuple(v)]
        except KeyError:
            raise ValueError(f"{v!r} is not a root of {self.isotype.name}") from None


def _build(t: IsoType, roots: list[tuple], simple_vecs: list[tuple]) -> RootSystem:
    roots_sorted = tuple(sorted(roots))
    index = {v: i for i, v in enumerate(roots_sorted)}
    simples = tuple(index[tuple(v)] for v in simple_vecs)
    perms = []
    for v in simple_vecs:
        perm = tuple(index[tuple(reflect(r, v))] for r in roots_sorted)
        perms.append(perm)
    return RootSystem(t, len(roots_sorted[0]), roots_sorted, simples, index, tuple(perms))


@lru_cache(maxsize=None)
def root_system(t: IsoType) -> RootSystem:
    """The root system of Tables for a supported finite iso type."""
    f, n = t.family, t.rank
    if f == "A":
        dim = n + 1
        roots = [
            _add(_e(i, dim), _neg(_e(j, dim)))
            for i in range(1, dim + 1)
            for j in range(1, dim + 1)
            if i != j
        ]
    elif f == "B":
        roots = _pm_pairs(n) + [_e(i, n, s) for i in range(1, n + 1) for s in (1, -1)]
    elif f == "D":
        roots = _pm_pairs(n)
    elif f == "E":
        if n == 8:
            roots = _pm_pairs(8) + _half_roots(8, lambda e: math.prod(e) == 1)
        elif n == 7:
            roots = [r for r in _pm_pairs(8) if r[6] == 0 and r[7] == 0]
            roots += [_add(_e(7, 8), _neg(_e(8, 8))), _add(_e(8, 8), _neg(_e(7, 8)))]
            roots += _half_roots(8, lambda e: math.prod(e) == 1 and e[7] == -e[6])
        else:
            roots = [r for r in _pm_pairs(8) if all(r[i] == 0 for i in (5, 6, 7))]
            roots += _half_roots(
                8, lambda e: math.prod(e) == 1 and e[7] == -e[6] and e[7] == -e[5]
            )
        return _build(t, roots, _simple_vectors(t, 8))
    elif f == "F":
        roots = (
            _pm_pairs(4)
            + [_e(i, 4, s) for i in range(1, 5) for s in (1, -1)]
            + _half_roots(4, lambda e: True)
        )
    elif f == "G":
        roots = []
        for i, j in ((1, 2), (1, 3), (2, 3)):
            base = _add(_e(i, 3), _neg(_e(j, 3)))
            roots += [base, _neg(base)]
        for i in range(1, 4):
            j, k = [x for x in range(1, 4) if x != i]
            base = _add(_add(_e(i, 3), _e(i, 3)), _neg(_add(_e(j, 3), _e(k, 3))))
            roots += [base, _neg(base)]
    elif f == "H":
        icosians = _icosian_roots()
        if n == 4:
            roots = icosians
            simple_vecs = [
                (Q5(Fraction(-1, 2)), -GOLDEN_A, Q5(0), GOLDEN_B),
                (Q5(Fraction(1, 2)), GOLDEN_B, -GOLDEN_A, Q5(0)),
                (-GOLDEN_A, Q5(Fraction(1, 2)), GOLDEN_B, Q5(0)),
                (GOLDEN_A, Q5(Fraction(-1, 2)), GOLDEN_B, Q5(0)),
            ]
            return _build(t, roots, simple_vecs)
        zero = Q5(0)
        roots = [r[:3] for r in icosians if r[3] == zero]
        simple_vecs = [
            (Q5(Fraction(1, 2)), GOLDEN_B, -GOLDEN_A),
            (-GOLDEN_A, Q5(Fraction(1, 2)), GOLDEN_B),
            (GOLDEN_A, Q5(Fraction(-1, 2)), GOLDEN_B),
        ]
        return _build(t, roots, simple_vecs)
    else:
        raise ValueError(f"no root system support for {t.name}")
    return _build(t, roots, _simple_vectors(t, len(roots[0])))


# -- permutation arithmetic ---------------------------------------------------


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p then q (left-to-right application)."""
    return tuple(q[x] for x in p)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def word_to_element(rs: RootSystem, word: Word) -> Perm:
    """Permutation of the root list for a word in the simple reflections."""
    n = len(rs.roots)
    p = identity_perm(n)
    for i in word:
        if not 0 <= i < rs.rank:
            raise IndexError(f"generator index {i} out of range for {rs.isotype.name}")
        p = compose(p, rs.simple_perms[i])
    return p


def element_order(p: Perm) -> int:
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = math.lcm(order, length)
    return order


def fixed_roots(p: Perm) -> int:
    return sum(1 for i, x in enumerate(p) if i == x)


def reflection_perm(rs: RootSystem, v: Sequence) -> Perm:
    rs.root_index(tuple(v))
    return tuple(rs.root_index(reflect(r, v)) for r in rs.roots)


# -- expressing arbitrary reflections in the generators ----------------------


def _solve_linear(mat: list[list], rhs: list) -> list:
    """Exact Gaussian elimination; mat is square and invertible."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def simple_coefficients(rs: RootSystem, v: Sequence) -> list:
    """Coefficients of v in the simple-root basis (exact)."""
    simects = [rs.simple_vector(i) for i in range(rs.rank)]
    gram = [[dot(x, y) for y in simects] for x in simects]
    rhs = [dot(v, x) for x in simects]
    return _solve_linear(gram, rhs)


def is_positive_root(rs: RootSystem, v: Sequence) -> bool:
    coeffs = simple_coefficients(rs, v)
    return all(c >= 0 for c in coeffs)


def express_reflection_word(rs: RootSystem, v: Sequence) -> tuple[list[int], int]:
    """Word w and simple index i with w(v) equal to the i-th simple root.

    Consequently the reflection in v equals w s_i w^{-1} as a permutation
    (the word of that element is w + [i] + reversed(w)).  A negative root is
    first replaced by its negative, which defines the same reflection; the
    descent always picks the lowest-indexed simple with positive pairing.
    """
    v = tuple(v)
    rs.root_index(v)
    if not is_positive_root(rs, v):
        v = _neg(v)
    word: list[int] = []
    simple_vecs = [rs.simple_vector(i) for i in range(rs.rank)]
    while True:
        for i, alpha in enumerate(simple_vecs):
            if v == alpha:
                return word, i
        for i, alpha in enumerate(simple_vecs):
            if v != alpha and dot(v, alpha) > 0:
                v = reflect(v, alpha)
                word.append(i)
                break
        else:
            raise AssertionError("positive root with no positive simple pairing")


def reflection_word(rs: RootSystem, v: Sequence) -> list[int]:
    """Full generator word for the reflection in root v."""
    w, i = express_reflection_word(rs, v)
    return w + [i] + w[::-1]


def element_matrix(rs: RootSystem, word: Word) -> list[list]:
    """Exact dim x dim matrix of a word (row-vector convention, v -> v M)."""
    dim = rs.dim
    mat = [[Fraction(1) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
    if rs.roots and isinstance(rs.roots[0][0], Q5):
        mat = [[Q5(x) for x in row] for row in mat]
    for i in word:
        alpha = rs.simple_vector(i)
        mat = [list(reflect(row, alpha)) for row in mat]
    return mat


def pairing_profile(rs: RootSystem, p: Perm) -> tuple:
    """Sorted multiset of <r, p(r)>/<r, r> over all roots; a class invariant.

    Conjugation permutes the roots and preserves the bilinear form, so equal
    classes have equal profiles; distinct profiles certify non-conjugacy even
    when fixed-root counts tie.
    """
    from collections import Counter

    vals = Counter()
    for i, r in enumerate(rs.roots):
        vals[dot(r, rs.roots[p[i]]) / dot(r, r)] += 1
    return tuple(sorted(vals.items()))


def verify_closure(rs: RootSystem) -> bool:
    """Each simple reflection permutes the root list (true by construction)."""
    n = len(rs.roots)
    return all(sorted(p) == list(range(n)) for p in rs.simple_perms)


# -- pairing table for diagram labelling -------------------------------------


@lru_cache(maxsize=None)
def pairing_table(t: IsoType) -> tuple[tuple[int, ...], ...]:
    """Table of 4<u,v>^2 / (<u,u><v,v>) over all root pairs (Weyl types).

    Values land in {0, 1, 2, 3, 4}; an edge labelled m in a class diagram
    requires value m - 2 and a non-edge requires 0.
    """
    rs = root_system(t)
    norms = [dot(r, r) for r in rs.roots]
    table = []
    for i, u in enumerate(rs.roots):
        row = []
        for j, v in enumerate(rs.roots):
            val = 4 * dot(u, v) ** 2 / (norms[i] * norms[j])
            assert val.denominator == 1
            row.append(int(val))
        table.append(tuple(row))
    return tuple(table)
