"""Coxeter symbols: labelled graphs on generator names, plus their text DSL.

A symbol records the presentation data m(a, b) of a Coxeter system: nodes are
generator names, an edge carries an integer label m >= 3 or INFINITY, and an
absent edge means m = 2 (the generators commute).

The DSL is line-oriented UTF-8 with ``#`` comments::

    gens x1 x2 x3;
    edge x1 x2: 4;
    edge x2 x3: inf;

``emit_symbol`` writes a canonical form (generators in declaration order, one
``gens`` statement, edges sorted lexicographically by name pair) that is
byte-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

INFINITY = "inf"

EdgeLabel = Union[int, str]  # int m >= 3, or INFINITY


class SymbolError(ValueError):
    """Malformed symbol source or inconsistent symbol data."""


def _check_label(label: EdgeLabel) -> EdgeLabel:
    if label == INFINITY:
        return INFINITY
    if isinstance(label, bool) or not isinstance(label, int):
        raise SymbolError(f"edge label must be an integer >= 3 or 'inf', got {label!r}")
    if label < 3:
        raise SymbolError(f"edge label must be >= 3 (m = 2 pairs are simply omitted), got {label}")
    return label


@dataclass(frozen=True)
class CoxeterSymbol:
    """Immutable Coxeter symbol on an ordered tuple of generator names."""

    generators: tuple[str, ...]
    edges: Mapping[frozenset, EdgeLabel] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if g in seen:
                raise SymbolError(f"duplicate generator {g!r}")
            seen.add(g)
        norm = {}
        for pair, label in self.edges.items():
            a, b = tuple(pair) if len(pair) == 2 else (None, None)
            if a is None or b is None:
                raise SymbolError("self-edges are not allowed")
            for g in (a, b):
                if g not in seen:
                    raise SymbolError(f"edge endpoint {g!r} is not a declared generator")
            norm[frozenset((a, b))] = _check_label(label)
        object.__setattr__(self, "edges", norm)

    # -- basic queries ----------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def label(self, a: str, b: str) -> EdgeLabel:
        """m(a, b); 2 when no edge is present, 1 on the diagonal."""
        if a == b:
            return 1
        return self.edges.get(frozenset((a, b)), 2)

    def neighbours(self, a: str) -> list[str]:
        return [b for b in self.generators if b != a and frozenset((a, b)) in self.edges]

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each in generator declaration order."""
        remaining = set(self.generators)
        out = []
        for g in self.generators:
            if g not in remaining:
                continue
            comp, stack = {g}, [g]
            remaining.discard(g)
            while stack:
                x = stack.pop()
                for y in self.neighbours(x):
                    if y in remaining:
                        remaining.discard(y)
                        comp.add(y)
                        stack.append(y)
            out.append(tuple(h for h in self.generators if h in comp))
        return out

    def restrict(self, names: Iterable[str]) -> "CoxeterSymbol":
        keep = list(names)
        keep_set = set(keep)
        for g in keep:
            if g not in self.generators:
                raise SymbolError(f"unknown generator {g!r}")
        gens = tuple(g for g in self.generators if g in keep_set)
        edges = {p: m for p, m in self.edges.items() if p <= keep_set}
        return CoxeterSymbol(gens, edges)


def induced_subsymbol(sym: CoxeterSymbol, subset: Iterable[str]) -> CoxeterSymbol:
    """Restriction of the symbol to a subset of generators and incident edges."""
    return sym.restrict(subset)


def make_symbol(generators: Iterable[str], edges: Iterable[tuple[str, str, EdgeLabel]]) -> CoxeterSymbol:
    """Convenience constructor from (a, b, m) triples."""
    gens = tuple(generators)
    edge_map: dict[frozenset, EdgeLabel] = {}
    for a, b, m in edges:
        if a == b:
            raise SymbolError("self-edges are not allowed")
        key = frozenset((a, b))
        if key in edge_map and edge_map[key] != _check_label(m):
            raise SymbolError(f"conflicting labels for edge {a}-{b}")
        edge_map[key] = _check_label(m)
    return CoxeterSymbol(gens, edge_map)


# -- DSL ------------------------------------------------------------------


def split_statements(text: str) -> list[tuple[int, str]]:
    """Split source into ';'-terminated statements, tracking line numbers."""
    out = []
    buf: list[str] = []
    buf_line = 0  # line of the first non-blank character in buf
    for line_no, raw in enumerate(text.splitlines(), start=1):
        for ch in raw.split("#", 1)[0]:
            if ch == ";":
                stmt = "".join(buf).strip()
                if stmt:
                    out.append((buf_line, stmt))
                buf = []
                buf_line = 0
            else:
                if buf_line == 0 and not ch.isspace():
                    buf_line = line_no
                buf.append(ch)
        buf.append(" ")
    tail = "".join(buf).strip()
    if tail:
        raise SymbolError(f"line {buf_line}: statement missing terminating ';': {tail!r}")
    return out


def parse_symbol(text: str) -> CoxeterSymbol:
    """Parse symbol DSL source into a CoxeterSymbol."""
    gens: list[str] = []
    seen: set[str] = set()
    edges: dict[frozenset, EdgeLabel] = {}
    for line_no, stmt in split_statements(text):
        words = stmt.split()
        if words[0] == "gens":
            if len(words) < 2:
                raise SymbolError(f"line {line_no}: 'gens' needs at least one name")
            for g in words[1:]:
                if g in seen:
                    raise SymbolError(f"line {line_no}: duplicate generator {g!r}")
                seen.add(g)
                gens.append(g)
        elif words[0] == "edge":
            body = stmt[len("edge"):].strip()
            if ":" not in body:
                raise SymbolError(f"line {line_no}: edge statement needs ': <m|inf>'")
            lhs, rhs = body.rsplit(":", 1)
            names = lhs.split()
            if len(names) != 2:
                raise SymbolError(f"line {line_no}: edge needs exactly two generator names")
            a, b = names
            if a == b:
                raise SymbolError(f"line {line_no}: self-edge on {a!r}")
            for g in (a, b):
                if g not in seen:
                    raise SymbolError(f"line {line_no}: unknown generator {g!r} in edge")
            rhs = rhs.strip()
            if rhs == INFINITY:
                label: EdgeLabel = INFINITY
            else:
                try:
                    label = int(rhs)
                except ValueError:
                    raise SymbolError(f"line {line_no}: edge label must be an integer or 'inf', got {rhs!r}") from None
                if label < 3:
                    raise SymbolError(f"line {line_no}: edge label must be >= 3, got {label}")
            key = frozenset((a, b))
            if key in edges and edges[key] != label:
                raise SymbolError(f"line {line_no}: conflicting label for edge {a}-{b}")
            edges[key] = label
        else:
            raise SymbolError(f"line {line_no}: unknown statement {words[0]!r}")
    return CoxeterSymbol(tuple(gens), edges)


def emit_symbol(sym: CoxeterSymbol) -> str:
    """Canonical DSL text for a symbol; byte-stable for equal symbols."""
    lines = ["gens " + " ".join(sym.generators) + ";"]
    entries = []
    for pair, label in sym.edges.items():
        a, b = sorted(pair)
        entries.append((a, b, label))
    for a, b, label in sorted(entries):
        lines.append(f"edge {a} {b}: {label};")
    return "\n".join(lines) + "\n"
