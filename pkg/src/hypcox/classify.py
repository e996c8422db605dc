"""Classification of Coxeter symbols against the finite and affine lists.

Connected components are matched by graph isomorphism against canonical
shapes (with degree/label fingerprints for pruning), exceptional isomorphisms
are normalised at classification time (I2(3) -> A2, I2(4) -> B2,
I2(6) -> G2), and the spherical poset of a symbol collects every subset of
generators whose induced subsymbol is finite.

A single infinity-labelled edge is recognised as the affine A~1 only when
``infinite_edge_affine`` is passed: the abstract symbol alone cannot tell the
parallel from the ultraparallel geometry, so the default is OTHER.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .symbol import INFINITY, CoxeterSymbol, SymbolError, make_symbol

FINITE_FAMILIES = ("A", "B", "D", "E", "F", "G", "H", "I")
AFFINE_FAMILIES = ("A~", "B~", "C~", "D~", "E~", "F~", "G~")


@dataclass(frozen=True)
class IsoType:
    """Isomorphism type of an irreducible finite or affine Coxeter group."""

    family: str
    rank: int
    m: Optional[int] = None  # only for I2(m)

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
            "H": n in (3, 4),
            "I": n == 2 and self.m is not None and self.m >= 3,
            "A~": n >= 1,
            "B~": n >= 3,
            "C~": n >= 2,
            "D~": n >= 4,
            "E~": n in (6, 7, 8),
            "F~": n == 4,
            "G~": n == 2,
        }.get(f)
        if not ok:
            raise ValueError(f"invalid isomorphism type {f}{n}" + (f"({self.m})" if self.m else ""))
        if f != "I" and self.m is not None:
            raise ValueError("parameter m only applies to I2(m)")

    @property
    def is_affine(self) -> bool:
        return self.family.endswith("~")

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.name

    def order(self) -> int:
        """Group order for finite types."""
        if self.is_affine:
            raise ValueError(f"{self.name} is affine, not finite")
        f, n = self.family, self.rank
        if f == "A":
            return math.factorial(n + 1)
        if f == "B":
            return (1 << n) * math.factorial(n)
        if f == "D":
            return (1 << (n - 1)) * math.factorial(n)
        if f == "E":
            return {6: 51840, 7: 2903040, 8: 696729600}[n]
        if f == "F":
            return 1152
        if f == "G":
            return 12
        if f == "H":
            return {3: 120, 4: 14400}[n]
        if f == "I":
            return 2 * self.m
        raise AssertionError(f)


def iso(family: str, rank: int, m: Optional[int] = None) -> IsoType:
    """IsoType constructor applying the exceptional isomorphisms."""
    if family == "I":
        if m == 3:
            return IsoType("A", 2)
        if m == 4:
            return IsoType("B", 2)
        if m == 6:
            return IsoType("G", 2)
    return IsoType(family, rank, m)


def group_order(types: IsoType | Iterable[IsoType]) -> int:
    """Order of a finite type or a product of finite types."""
    if isinstance(types, IsoType):
        return types.order()
    out = 1
    for t in types:
        out *= t.order()
    return out


# -- canonical symbols ------------------------------------------------------


def _path_edges(n: int, labels=None):
    labels = labels or {}
    return [(str(i), str(i + 1), labels.get(i, 3)) for i in range(n - 1)]


@lru_cache(maxsize=None)
def canonical_symbol(t: IsoType) -> CoxeterSymbol:
    """Canonical labelled graph for an iso type, nodes named '0'..'r-1'.

    For the finite types the node order matches the simple-root order of the
    standard root systems in :mod:`hypcox.roots`.
    """
    f, n = t.family, t.rank
    names = lambda k: [str(i) for i in range(k)]
    if f == "A":
        return make_symbol(names(n), _path_edges(n))
    if f == "B":
        return make_symbol(names(n), _path_edges(n, {n - 2: 4}))
    if f == "D":
        edges = _path_edges(n - 1)[: n - 3] + [(str(n - 3), str(n - 2), 3), (str(n - 3), str(n - 1), 3)]
        return make_symbol(names(n), edges)
    if f == "E":
        chain = {6: 5, 7: 6, 8: 7}[n]
        branch = {6: ("2", "5"), 7: ("3", "6"), 8: ("4", "7")}[n]
        return make_symbol(names(n), _path_edges(chain) + [(branch[0], branch[1], 3)])
    if f == "F":
        return make_symbol(names(4), _path_edges(4, {1: 4}))
    if f == "G":
        return make_symbol(names(2), [("0", "1", 6)])
    if f == "H":
        return make_symbol(names(n), _path_edges(n, {n - 2: 5}))
    if f == "I":
        return make_symbol(names(2), [("0", "1", t.m)])
    if f == "A~":
        if n == 1:
            return make_symbol(names(2), [("0", "1", INFINITY)])
        edges = _path_edges(n + 1) + [("0", str(n), 3)]
        return make_symbol(names(n + 1), edges)
    if f == "B~":
        edges = [("0", "2", 3), ("1", "2", 3)]
        edges += [(str(i), str(i + 1), 3) for i in range(2, n - 1)]
        edges += [(str(n - 1), str(n), 4)]
        return make_symbol(names(n + 1), edges)
    if f == "C~":
        return make_symbol(names(n + 1), _path_edges(n + 1, {0: 4, n - 1: 4}))
    if f == "D~":
        edges = [("0", "2", 3), ("1", "2", 3)]
        edges += [(str(i), str(i + 1), 3) for i in range(2, n - 2)]
        edges += [(str(n - 2), str(n - 1), 3), (str(n - 2), str(n), 3)]
        return make_symbol(names(n + 1), edges)
    if f == "E~":
        base = canonical_symbol(IsoType("E", n))
        extra = {6: ("5", "6"), 7: ("5", "7"), 8: ("0", "8")}[n]
        edges = [(a, b, m) for (pair, m) in base.edges.items() for a, b in [sorted(pair)]]
        return make_symbol(names(n + 1), edges + [(extra[0], extra[1], 3)])
    if f == "F~":
        return make_symbol(names(5), _path_edges(5, {2: 4}))
    if f == "G~":
        return make_symbol(names(3), [("0", "1", 3), ("1", "2", 6)])
    raise AssertionError(f)


# -- graph isomorphism ------------------------------------------------------


def _fingerprint(sym: CoxeterSymbol, node: str, nodes: set[str]):
    labels = sorted(
        str(sym.label(node, other)) for other in nodes if other != node and sym.label(node, other) != 2
    )
    return tuple(labels)


def find_isomorphism(pattern: CoxeterSymbol, sym: CoxeterSymbol, targets: tuple[str, ...]) -> Optional[tuple[str, ...]]:
    """Label-preserving bijection pattern nodes -> targets, or None.

    Pattern nodes are assigned in index order and candidate targets are tried
    in the order given, so the first solution found is the lexicographically
    least mapping; diagram automorphisms therefore resolve deterministically.
    """
    p_nodes = pattern.generators
    if len(p_nodes) != len(targets):
        return None
    t_set = set(targets)
    p_fp = {g: _fingerprint(pattern, g, set(p_nodes)) for g in p_nodes}
    t_fp = {g: _fingerprint(sym, g, t_set) for g in targets}
    if sorted(p_fp.values()) != sorted(t_fp.values()):
        return None

    assigned: dict[str, str] = {}

    def extend(i: int) -> bool:
        if i == len(p_nodes):
            return True
        p = p_nodes[i]
        for cand in targets:
            if cand in assigned.values():
                continue
            if p_fp[p] != t_fp[cand]:
                continue
            if any(pattern.label(p, q) != sym.label(cand, assigned[q]) for q in assigned):
                continue
            assigned[p] = cand
            if extend(i + 1):
                return True
            del assigned[p]
        return False

    if extend(0):
        return tuple(assigned[p] for p in p_nodes)
    return None


# -- component classification ------------------------------------------------

FINITE = "finite"
AFFINE = "affine"
OTHER = "other"


@dataclass(frozen=True)
class ComponentClass:
    """Classification of one connected component of a symbol."""

    generators: tuple[str, ...]
    kind: str
    isotype: Optional[IsoType]
    mapping: Optional[tuple[str, ...]]  # mapping[i] = generator at canonical node i


@dataclass(frozen=True)
class Classification:
    components: tuple[ComponentClass, ...]

    @property
    def is_finite(self) -> bool:
        return all(c.kind == FINITE for c in self.components)

    @property
    def is_affine(self) -> bool:
        return bool(self.components) and all(c.kind == AFFINE for c in self.components)

    def decomposition(self) -> tuple[IsoType, ...]:
        if not self.is_finite:
            raise ValueError("decomposition only defined for finite symbols")
        return tuple(c.isotype for c in self.components)

    def order(self) -> int:
        return group_order(self.decomposition())

    @property
    def name(self) -> str:
        if not self.components:
            return "1"
        return "x".join(c.isotype.name if c.isotype else "OTHER" for c in self.components)


def _candidates(r: int) -> list[IsoType]:
    out: list[IsoType] = []
    out.append(IsoType("A", r))
    if r >= 2:
        out.append(IsoType("B", r))
    if r >= 4:
        out.append(IsoType("D", r))
    if r in (6, 7, 8):
        out.append(IsoType("E", r))
    if r == 4:
        out.append(IsoType("F", 4))
        out.append(IsoType("H", 4))
    if r == 3:
        out.append(IsoType("H", 3))
    # affine shapes on r nodes have rank r-1
    n = r - 1
    if n >= 2:
        out.append(IsoType("A~", n))
    if n >= 3:
        out.append(IsoType("B~", n))
    if n >= 2:
        out.append(IsoType("C~", n))
    if n >= 4:
        out.append(IsoType("D~", n))
    if n in (6, 7, 8):
        out.append(IsoType("E~", n))
    if n == 4:
        out.append(IsoType("F~", 4))
    if n == 2:
        out.append(IsoType("G~", 2))
    return out


def _classify_component(sym: CoxeterSymbol, comp: tuple[str, ...], infinite_edge_affine: bool) -> ComponentClass:
    r = len(comp)
    if r == 1:
        return ComponentClass(comp, FINITE, IsoType("A", 1), comp)
    if any(sym.label(a, b) == INFINITY for a, b in combinations(comp, 2)):
        if r == 2 and infinite_edge_affine:
            return ComponentClass(comp, AFFINE, IsoType("A~", 1), comp)
        return ComponentClass(comp, OTHER, None, None)
    if r == 2:
        m = sym.label(comp[0], comp[1])
        return ComponentClass(comp, FINITE, iso("I", 2, m), comp)
    for cand in _candidates(r):
        mapping = find_isomorphism(canonical_symbol(cand), sym, comp)
        if mapping is not None:
            kind = AFFINE if cand.is_affine else FINITE
            return ComponentClass(comp, kind, cand, mapping)
    return ComponentClass(comp, OTHER, None, None)


def classify(sym: CoxeterSymbol, *, infinite_edge_affine: bool = False) -> Classification:
    """Classify every connected component as finite, affine, or other."""
    return Classification(
        tuple(_classify_component(sym, comp, infinite_edge_affine) for comp in sym.components())
    )


# -- spherical poset ---------------------------------------------------------


@dataclass(frozen=True)
class PosetNode:
    subset: tuple[str, ...]  # canonical: sorted by declaration order
    classification: Classification
    order: int


@dataclass(frozen=True)
class SphericalPoset:
    """All generator subsets whose induced subsymbol is finite."""

    symbol: CoxeterSymbol
    nodes: dict[frozenset, PosetNode]

    def __contains__(self, subset) -> bool:
        return frozenset(subset) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def subsets(self) -> list[tuple[str, ...]]:
        return [n.subset for n in self.nodes.values()]

    def maximal_elements(self) -> list[PosetNode]:
        keys = list(self.nodes)
        out = []
        for k in keys:
            if not any(k < other for other in keys):
                out.append(self.nodes[k])
        out.sort(key=lambda n: (len(n.subset), [self.symbol.index(g) for g in n.subset]))
        return out


def spherical_poset(sym: CoxeterSymbol) -> SphericalPoset:
    """Enumerate spherical subsets bottom-up, pruning by downward closure."""
    order_of = {g: i for i, g in enumerate(sym.generators)}
    empty = frozenset()
    nodes: dict[frozenset, PosetNode] = {
        empty: PosetNode((), Classification(()), 1)
    }
    current: list[frozenset] = [empty]
    for size in range(1, sym.rank + 1):
        nxt = []
        seen: set[frozenset] = set()
        for base in current:
            for g in sym.generators:
                if g in base:
                    continue
                cand = base | {g}
                if cand in seen:
                    continue
                seen.add(cand)
                if any(cand - {h} not in nodes for h in cand):
                    continue
                sub = tuple(sorted(cand, key=order_of.get))
                cls = classify(sym.restrict(sub))
                if cls.is_finite:
                    nodes[cand] = PosetNode(sub, cls, cls.order())
                    nxt.append(cand)
        if not nxt:
            break
        current = nxt
    return SphericalPoset(sym, nodes)


def lcm_finite_orders(sym: CoxeterSymbol) -> int:
    """Lowest common multiple of the orders of all finite standard subgroups."""
    poset = spherical_poset(sym)
    return math.lcm(*(node.order for node in poset.nodes.values()))
