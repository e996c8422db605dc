"""Prime-order torsion in finite Coxeter groups, and symbol-wide inventories.

For the crystallographic families the conjugacy classes of prime order are
encoded by class diagrams (disjoint unions of unlabelled paths, sometimes
with prescribed root labels); a representative word is the black-then-white
product of the node reflections, with non-simple reflections rewritten
through a conjugating word found by height descent.  The icosahedral types
use explicit word lists validated on their root action, and the dihedral
types use the parametric word family.

A vectorised brute-force oracle enumerates any group of order up to 10^6 and
computes its prime-order classes outright; the generated representatives are
checked against it in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .classify import IsoType, spherical_poset
from .symbol import CoxeterSymbol
from .roots import (
    Perm,
    element_order,
    fixed_roots,
    pairing_table,
    reflection_word,
    root_system,
    word_to_element,
)

ORACLE_ORDER_BOUND = 10**6


class TorsionError(RuntimeError):
    """A diagram could not be labelled or produced a wrong-order element."""


def _primes_upto(n: int) -> list[int]:
    out = []
    for p in range(2, n + 1):
        if all(p % q for q in out):
            out.append(p)
    return out


@dataclass(frozen=True)
class ClassDiagram:
    """Disjoint union of paths encoding one conjugacy class of prime order."""

    prime: int
    paths: tuple[int, ...]  # number of nodes in each path component
    labels: Optional[tuple[tuple, ...]]  # prescribed roots, path-major order
    tag: str

    @property
    def node_count(self) -> int:
        return sum(self.paths)


@dataclass(frozen=True)
class LabelledDiagram:
    diagram: ClassDiagram
    roots: tuple[tuple, ...]  # one root per node, path-major order


@dataclass(frozen=True)
class ConjClassRep:
    """A representative word together with its provenance."""

    word: tuple[int, ...]  # generator indices of the ambient irreducible type
    order: int
    source: str
    fixed_root_count: Optional[int]  # None when the type has no vector model


# -- explicit label helpers ---------------------------------------------------


def _unit(i: int, dim: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if j == i - 1 else Fraction(0) for j in range(dim))


def _pair(i: int, j: int, dim: int, sign: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * dim
    out[i - 1] = Fraction(1)
    out[j - 1] = Fraction(sign)
    return tuple(out)


def _half(signs: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(Fraction(s, 2) for s in signs)


def prime_class_diagrams(t: IsoType) -> list[ClassDiagram]:
    """All prime-order class diagrams of an irreducible Weyl type.

    Dihedral and icosahedral types are served by their own representative
    functions and are rejected here.
    """
    f, n = t.family, t.rank
    out: list[ClassDiagram] = []
    if f == "A":
        for p in _primes_upto(n + 1):
            for k in range(1, (n + 1) // p + 1):
                out.append(ClassDiagram(p, (p - 1,) * k, None, f"A{n}:p{p}:k{k}"))
        return out
    if f == "B":
        for k in range(0, n // 2 + 1):
            for m in range(0, n - 2 * k + 1):
                if k + m == 0:
                    continue
                labels = [_pair(2 * i - 1, 2 * i, n, -1) for i in range(1, k + 1)]
                labels += [_unit(2 * k + i, n) for i in range(1, m + 1)]
                out.append(ClassDiagram(2, (1,) * (k + m), tuple(labels), f"B{n}:p2:k{k}m{m}"))
        for p in _primes_upto(n):
            if p == 2:
                continue
            for k in range(1, n // p + 1):
                out.append(ClassDiagram(p, (p - 1,) * k, None, f"B{n}:p{p}:k{k}"))
        return out
    if f == "D":
        for k in range(0, n // 2 + 1):
            for m in range(0, (n - 2 * k) // 2 + 1):
                if k + m == 0:
                    continue
                if m == 0 and n % 2 == 0 and k == n // 2:
                    # the all-singles diagram at full support encodes two classes
                    for sign, name in ((-1, "minus"), (1, "plus")):
                        labels = [_pair(2 * i - 1, 2 * i, n, -1) for i in range(1, k)]
                        labels.append(_pair(n - 1, n, n, sign))
                        out.append(
                            ClassDiagram(2, (1,) * k, tuple(labels), f"D{n}:p2:split:{name}")
                        )
                    continue
                labels = [_pair(2 * i - 1, 2 * i, n, -1) for i in range(1, k + 1)]
                for i in range(1, m + 1):
                    a = 2 * k + 2 * i - 1
                    labels.append(_pair(a, a + 1, n, -1))
                    labels.append(_pair(a, a + 1, n, 1))
                out.append(ClassDiagram(2, (1,) * (k + 2 * m), tuple(labels), f"D{n}:p2:k{k}m{m}"))
        for p in _primes_upto(n):
            if p == 2:
                continue
            for k in range(1, n // p + 1):
                out.append(ClassDiagram(p, (p - 1,) * k, None, f"D{n}:p{p}:k{k}"))
        return out
    if f == "E" and n == 6:
        for k in range(1, 5):
            out.append(ClassDiagram(2, (1,) * k, None, f"E6:p2:k{k}"))
        for k in range(1, 4):
            out.append(ClassDiagram(3, (2,) * k, None, f"E6:p3:k{k}"))
        out.append(ClassDiagram(5, (4,), None, "E6:p5"))
        return out
    if f == "E" and n == 7:
        for k in range(1, 8):
            if k == 3:
                for sign, name in ((-1, "minus"), (1, "plus")):
                    labels = (_pair(1, 2, 8, -1), _pair(3, 4, 8, -1), _pair(5, 6, 8, sign))
                    out.append(ClassDiagram(2, (1, 1, 1), labels, f"E7:p2:k3:{name}"))
            elif k == 4:
                labels = (_pair(1, 2, 8, -1), _pair(3, 4, 8, -1), _pair(5, 6, 8, -1), _pair(7, 8, 8, -1))
                out.append(ClassDiagram(2, (1,) * 4, labels, "E7:p2:k4:minus"))
                labels = (
                    _pair(1, 2, 8, 1),
                    _pair(3, 4, 8, 1),
                    _pair(5, 6, 8, 1),
                    _half((1, -1, 1, -1, 1, -1, 1, -1)),
                )
                out.append(ClassDiagram(2, (1,) * 4, labels, "E7:p2:k4:plus"))
            else:
                out.append(ClassDiagram(2, (1,) * k, None, f"E7:p2:k{k}"))
        for k in range(1, 4):
            out.append(ClassDiagram(3, (2,) * k, None, f"E7:p3:k{k}"))
        out.append(ClassDiagram(5, (4,), None, "E7:p5"))
        out.append(ClassDiagram(7, (6,), None, "E7:p7"))
        return out
    if f == "E" and n == 8:
        for k in range(1, 9):
            if k == 4:
                for sign, name in ((-1, "minus"), (1, "plus")):
                    labels = (
                        _pair(1, 2, 8, -1),
                        _pair(3, 4, 8, -1),
                        _pair(5, 6, 8, -1),
                        _pair(7, 8, 8, sign),
                    )
                    out.append(ClassDiagram(2, (1,) * 4, labels, f"E8:p2:k4:{name}"))
            else:
                out.append(ClassDiagram(2, (1,) * k, None, f"E8:p2:k{k}"))
        for k in range(1, 5):
            out.append(ClassDiagram(3, (2,) * k, None, f"E8:p3:k{k}"))
        for k in range(1, 3):
            out.append(ClassDiagram(5, (4,) * k, None, f"E8:p5:k{k}"))
        out.append(ClassDiagram(7, (6,), None, "E8:p7"))
        return out
    if f == "F":
        e12 = _pair(1, 2, 4, -1)
        e12p = _pair(1, 2, 4, 1)
        e34 = _pair(3, 4, 4, -1)
        e34p = _pair(3, 4, 4, 1)
        halfp = _half((1, 1, 1, 1))
        # four orthogonal nodes give the central -1, absent from the published
        # list but a genuine order-2 class of its own (it fixes no roots)
        order2 = [
            ((e12,), (1,)),
            ((_unit(1, 4),), (1,)),
            ((e12, e34), (1, 1)),
            ((e12, _unit(3, 4)), (1, 1)),
            ((e12, e34, e34p), (1, 1, 1)),
            ((e12, e34, halfp), (1, 1, 1)),
            ((e12, e12p, e34, e34p), (1, 1, 1, 1)),
        ]
        for i, (labels, paths) in enumerate(order2):
            out.append(ClassDiagram(2, paths, labels, f"F4:p2:{i}"))
        e23 = _pair(2, 3, 4, -1)
        order3 = [
            ((e12, e23), (2,)),
            ((_unit(4, 4), halfp), (2,)),
            ((e12, e23, _unit(4, 4), halfp), (2, 2)),
        ]
        for i, (labels, paths) in enumerate(order3):
            out.append(ClassDiagram(3, paths, labels, f"F4:p3:{i}"))
        return out
    raise ValueError(f"class diagrams are defined for Weyl types A/B/D/E/F, not {t.name}")


# -- labelling ----------------------------------------------------------------


def _node_constraints(paths: Sequence[int]):
    """Per node: (predecessor position or None, path id, position-in-path)."""
    out = []
    pos = 0
    for pid, length in enumerate(paths):
        for s in range(length):
            out.append((pos - 1 if s > 0 else None, pid, s))
            pos += 1
    return out


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _search_assignment(n_items: int, paths: Sequence[int], orth: Sequence[int], adj: Sequence[int], universe: int):
    """Assign one item per diagram node under orthogonality/adjacency masks.

    Items are tried in ascending order; first nodes of equal-length paths are
    forced increasing, which kills the path-permutation symmetry.
    """
    nodes = _node_constraints(paths)
    total = len(nodes)
    chosen: list[int] = []

    def dfs() -> bool:
        if len(chosen) == total:
            return True
        pred, pid, s = nodes[len(chosen)]
        mask = universe
        for j, c in enumerate(chosen):
            if j == pred:
                mask &= adj[c]
            else:
                mask &= orth[c]
        if s == 0 and pid > 0 and paths[pid] == paths[pid - 1]:
            start_prev = sum(paths[:pid - 1])
            floor = chosen[start_prev]
            mask &= ~((1 << (floor + 1)) - 1)
        for cand in _iter_bits(mask):
            chosen.append(cand)
            if dfs():
                return True
            chosen.pop()
        return False

    if dfs():
        return list(chosen)
    return None


def _label_by_subsymbol(t: IsoType, paths: Sequence[int]) -> Optional[list[int]]:
    """Simple-root labelling read off the Coxeter symbol, if one exists."""
    rs = root_system(t)
    r = rs.rank
    vals = [[None] * r for _ in range(r)]
    simples = [rs.simple_vector(i) for i in range(r)]
    from .roots import dot

    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            v = 4 * dot(simples[i], simples[j]) ** 2 / (dot(simples[i], simples[i]) * dot(simples[j], simples[j]))
            vals[i][j] = v
    orth = [0] * r
    adj = [0] * r
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            if vals[i][j] == 0:
                orth[i] |= 1 << j
            elif vals[i][j] == 1:
                adj[i] |= 1 << j
    universe = (1 << r) - 1
    return _search_assignment(r, paths, orth, adj, universe)


def _label_by_roots(t: IsoType, paths: Sequence[int]) -> Optional[list[int]]:
    rs = root_system(t)
    table = pairing_table(t)
    n = len(rs.roots)
    # one root per reflection: keep the lexicographically smaller of r, -r
    halves = [
        i
        for i, r in enumerate(rs.roots)
        if rs.root_index(tuple(-c for c in r)) > i
    ]
    universe = 0
    for i in halves:
        universe |= 1 << i
    orth = [0] * n
    adj = [0] * n
    for i in range(n):
        row = table[i]
        o = a = 0
        for j in halves:
            if row[j] == 0:
                o |= 1 << j
            elif row[j] == 1:
                a |= 1 << j
        orth[i], adj[i] = o, a
    return _search_assignment(n, paths, orth, adj, universe)


def label_diagram(d: ClassDiagram, t: IsoType) -> LabelledDiagram:
    """Attach roots to diagram nodes subject to the edge-value constraints."""
    rs = root_system(t)
    if d.labels is not None:
        for v in d.labels:
            rs.root_index(v)
        _validate_labels(d, t, d.labels)
        return LabelledDiagram(d, tuple(d.labels))
    assignment = _label_by_subsymbol(t, d.paths)
    if assignment is not None:
        roots = tuple(rs.simple_vector(i) for i in assignment)
    else:
        indices = _label_by_roots(t, d.paths)
        if indices is None:
            raise TorsionError(f"no labelling found for {d.tag}")
        roots = tuple(rs.roots[i] for i in indices)
    _validate_labels(d, t, roots)
    return LabelledDiagram(d, roots)


def _validate_labels(d: ClassDiagram, t: IsoType, roots: Sequence[tuple]) -> None:
    from .roots import dot

    nodes = _node_constraints(d.paths)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            u, v = roots[i], roots[j]
            val = 4 * dot(u, v) ** 2 / (dot(u, u) * dot(v, v))
            pred, pid, s = nodes[j]
            expected = 1 if pred == i else 0
            if val != expected:
                raise TorsionError(f"labelling of {d.tag} violates the edge condition at nodes {i},{j}")


def diagram_element(ld: LabelledDiagram, t: IsoType) -> ConjClassRep:
    """Black-then-white product of the node reflections, as a generator word."""
    rs = root_system(t)
    nodes = _node_constraints(ld.diagram.paths)
    blacks = [r for r, (_, _, s) in zip(ld.roots, nodes) if s % 2 == 0]
    whites = [r for r, (_, _, s) in zip(ld.roots, nodes) if s % 2 == 1]
    simple_at = {rs.simple_vector(i): i for i in range(rs.rank)}
    simple_at.update({tuple(-c for c in rs.simple_vector(i)): i for i in range(rs.rank)})
    word: list[int] = []
    for v in blacks + whites:
        if v in simple_at:
            word.append(simple_at[v])
        else:
            word.extend(reflection_word(rs, v))
    perm = word_to_element(rs, word)
    got = element_order(perm)
    if got != ld.diagram.prime:
        raise TorsionError(f"{ld.diagram.tag}: element has order {got}, expected {ld.diagram.prime}")
    return ConjClassRep(tuple(word), ld.diagram.prime, ld.diagram.tag, fixed_roots(perm))


# -- icosahedral and dihedral families ----------------------------------------


def h_type_representatives(t: IsoType) -> list[ConjClassRep]:
    """Word lists for H3 and H4, validated on the exact root action.

    The published H4 order-3 list {x1x2, x2x3} names two conjugate elements
    (both rotations fixing six roots) and misses the fixed-point-free class;
    the tenth power of the Coxeter element x4x3x2x1 is appended to cover it.
    """
    if t.family != "H":
        raise ValueError(f"expected H3 or H4, got {t.name}")
    if t.rank == 3:
        words = {
            2: [[0], [0, 2], [1, 0, 2] * 5],
            3: [[0, 1]],
            5: [[1, 2], [1, 2, 1, 2]],
        }
    else:
        w = [3, 2, 1, 0]  # Coxeter element
        wb = [3, 2, 1]
        words = {
            2: [
                [0],
                [0, 3],
                [1, 0, 2, 1, 0] + w * 12 + wb + [3, 2, 3],
                [0, 1, 0, 2, 1, 0] + w * 12 + wb + [3, 2, 3],
            ],
            3: [[0, 1], [1, 2], w * 10],
            5: [
                [2, 3],
                [2, 3, 2, 3],
                [2] + w * 3 + wb + w * 2,
                [2] + w * 9 + wb + w * 2,
                [0, 1, 0, 2] + w * 8 + wb + [3, 2, 3],
            ],
        }
    rs = root_system(t)
    out = []
    for p, lst in words.items():
        for i, word in enumerate(lst):
            perm = word_to_element(rs, word)
            got = element_order(perm)
            if got != p:
                raise TorsionError(f"{t.name} word {word} has order {got}, expected {p}")
            out.append(ConjClassRep(tuple(word), p, f"{t.name}:p{p}:{i}", fixed_roots(perm)))
    return out


def dihedral_perms(m: int) -> tuple[Perm, Perm]:
    """The two generating reflections of I2(m) acting on the m-gon vertices."""
    x1 = tuple((-v) % m for v in range(m))
    x2 = tuple((1 - v) % m for v in range(m))
    return x1, x2


def dihedral_representatives(m: int) -> list[ConjClassRep]:
    """Prime-order class representatives of the dihedral group I2(m)."""
    if m < 3:
        raise ValueError("dihedral parameter must be at least 3")
    out = []
    out.append(ConjClassRep((0,), 2, f"I2({m}):refl0", None))
    if m % 2 == 0:
        out.append(ConjClassRep((1,), 2, f"I2({m}):refl1", None))
    k = m // 2
    for l in range(1, k + 1):
        p = m // math.gcd(m, l)
        if _is_prime(p):
            out.append(ConjClassRep((0, 1) * l, p, f"I2({m}):rot{l}", None))
    return out


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@lru_cache(maxsize=None)
def representatives_for_type(t: IsoType) -> tuple[ConjClassRep, ...]:
    """All prime-order class representatives of an irreducible finite type."""
    if t.family in ("A", "B", "D", "E", "F"):
        out = []
        for d in prime_class_diagrams(t):
            out.append(diagram_element(label_diagram(d, t), t))
        return tuple(out)
    if t.family == "G":
        return tuple(dihedral_representatives(6))
    if t.family == "H":
        return tuple(h_type_representatives(t))
    if t.family == "I":
        return tuple(dihedral_representatives(t.m))
    raise ValueError(f"not a finite irreducible type: {t.name}")


def reducible_representatives(components: Sequence[tuple[IsoType, Sequence[int]]]) -> list[ConjClassRep]:
    """Prime-order representatives of a direct product of irreducible types.

    ``components`` pairs each iso type with the positions of its generators
    in the ambient alphabet.  An order-p element of a product is a tuple of
    order-p-or-identity entries, not all trivial, so representatives are all
    products of one order-p representative from each component of a nonempty
    component subset.
    """
    per_comp: list[dict[int, list[ConjClassRep]]] = []
    primes: set[int] = set()
    for t, _pos in components:
        by_p: dict[int, list[ConjClassRep]] = {}
        for rep in representatives_for_type(t):
            by_p.setdefault(rep.order, []).append(rep)
        per_comp.append(by_p)
        primes.update(by_p)
    out: list[ConjClassRep] = []
    for p in sorted(primes):
        pools = []
        for by_p in per_comp:
            pools.append([None] + by_p.get(p, []))
        for choice in product(*pools):
            if all(c is None for c in choice):
                continue
            word: list[int] = []
            tags = []
            for (t, pos), rep in zip(components, choice):
                if rep is None:
                    continue
                word.extend(pos[i] for i in rep.word)
                tags.append(rep.source)
            out.append(ConjClassRep(tuple(word), p, "*".join(tags), None))
    return out


# -- inventory ----------------------------------------------------------------


@dataclass(frozen=True)
class InventoryEntry:
    word: tuple[str, ...]  # generator names of the ambient symbol
    order: int
    subset: tuple[str, ...]
    source: str


@dataclass(frozen=True)
class TorsionInventory:
    symbol: CoxeterSymbol
    entries: tuple[InventoryEntry, ...]

    def __len__(self):
        return len(self.entries)

    def words(self) -> list[tuple[str, ...]]:
        return [e.word for e in self.entries]


def inventory(sym: CoxeterSymbol) -> TorsionInventory:
    """Complete (possibly redundant) list of prime-order torsion words.

    Representatives are generated inside each maximal spherical subset and
    translated to the symbol's generator names through the classifier's node
    correspondence; duplicates across subsets are deliberately kept.
    """
    poset = spherical_poset(sym)
    entries: list[InventoryEntry] = []
    for node in poset.maximal_elements():
        if not node.subset:
            continue
        comps = node.classification.components
        by_comp: list[dict[int, list[tuple[tuple[str, ...], str]]]] = []
        primes: set[int] = set()
        for comp in comps:
            by_p: dict[int, list[tuple[tuple[str, ...], str]]] = {}
            for rep in representatives_for_type(comp.isotype):
                named = tuple(comp.mapping[i] for i in rep.word)
                by_p.setdefault(rep.order, []).append((named, rep.source))
            by_comp.append(by_p)
            primes.update(by_p)
        for p in sorted(primes):
            pools = [[None] + by_p.get(p, []) for by_p in by_comp]
            for choice in product(*pools):
                if all(c is None for c in choice):
                    continue
                word: list[str] = []
                tags = []
                for c in choice:
                    if c is None:
                        continue
                    word.extend(c[0])
                    tags.append(c[1])
                entries.append(InventoryEntry(tuple(word), p, node.subset, "*".join(tags)))
    return TorsionInventory(sym, tuple(entries))


# -- brute-force oracle --------------------------------------------------------


@dataclass
class OracleClasses:
    """Prime-order conjugacy classes of a finite Coxeter group, enumerated."""

    isotype: IsoType
    group_order: int
    class_info: list[tuple[int, int]]  # (prime, size) per class id
    membership: dict  # perm bytes -> class id
    dtype: type

    def counts_by_order(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p, _size in self.class_info:
            out[p] = out.get(p, 0) + 1
        return out

    def class_of(self, perm: Perm) -> Optional[int]:
        key = np.asarray(perm, dtype=self.dtype).tobytes()
        return self.membership.get(key)


def _generator_perms(t: IsoType) -> list[Perm]:
    if t.family == "I":
        return list(dihedral_perms(t.m))
    return list(root_system(t).simple_perms)


def rep_perm(t: IsoType, word: Sequence[int]) -> Perm:
    """Permutation of a representative word in the oracle's faithful action."""
    gens = _generator_perms(t)
    p = tuple(range(len(gens[0])))
    for i in word:
        g = gens[i]
        p = tuple(g[x] for x in p)
    return p


def enumerate_group(gens: Sequence[Perm]) -> tuple[np.ndarray, dict]:
    """Closure of the generators under composition; rows are permutations."""
    n = len(gens[0])
    dtype = np.uint8 if n <= 255 else np.uint16
    garr = [np.array(g, dtype=dtype) for g in gens]
    ident = np.arange(n, dtype=dtype)
    elems = [ident]
    index = {ident.tobytes(): 0}
    head = 0
    while head < len(elems):
        p = elems[head]
        head += 1
        for g in garr:
            q = g[p]
            key = q.tobytes()
            if key not in index:
                index[key] = len(elems)
                elems.append(q)
    return np.stack(elems), index


def _prime_power_masks(E: np.ndarray) -> dict[int, np.ndarray]:
    ident = np.arange(E.shape[1], dtype=E.dtype)

    def is_id(M):
        return (M == ident).all(axis=1)

    not_id = ~is_id(E)
    E2 = np.take_along_axis(E, E, axis=1)
    masks = {2: is_id(E2) & not_id}
    E3 = np.take_along_axis(E2, E, axis=1)
    masks[3] = is_id(E3) & not_id
    E4 = np.take_along_axis(E2, E2, axis=1)
    del E2
    E5 = np.take_along_axis(E4, E, axis=1)
    masks[5] = is_id(E5) & not_id
    del E5
    E7 = np.take_along_axis(E4, E3, axis=1)
    masks[7] = is_id(E7) & not_id
    return masks


def brute_force_classes(t: IsoType, order_bound: int = ORACLE_ORDER_BOUND) -> OracleClasses:
    """Enumerate the whole group and its prime-order conjugacy classes."""
    size = t.order()
    if size > order_bound:
        raise ValueError(f"{t.name} has order {size} > bound {order_bound}")
    gens = _generator_perms(t)
    E, _index = enumerate_group(gens)
    assert E.shape[0] == size, (t.name, E.shape[0], size)
    n = E.shape[1]
    dtype = E.dtype.type
    garr = [np.array(g, dtype=E.dtype) for g in gens]
    ginv = [np.argsort(g).astype(E.dtype) for g in garr]
    masks = _prime_power_masks(E)
    membership: dict = {}
    class_info: list[tuple[int, int]] = []
    for p in sorted(masks):
        for i in np.flatnonzero(masks[p]):
            key = E[i].tobytes()
            if key in membership:
                continue
            cid = len(class_info)
            frontier = [E[i]]
            membership[key] = cid
            count = 1
            while frontier:
                nxt = []
                for elem in frontier:
                    for g, gi in zip(garr, ginv):
                        conj = g[elem[gi]]
                        ckey = conj.tobytes()
                        if ckey not in membership:
                            membership[ckey] = cid
                            nxt.append(conj)
                            count += 1
                frontier = nxt
            class_info.append((p, count))
    return OracleClasses(t, size, class_info, membership, dtype)
