"""Permutation modules over a Coxeter symbol and manifold certificates.

An action assigns to every generator an involutive permutation of a finite
point set; the relators of the presentation must act trivially.  Points are
1-based in the text format and 0-based internally.  The action DSL is::

    action u1 on 3 for gamma;
    x1: (1 2);
    x2: (2 3);
    x3: id;

Every generator of the symbol needs a line (``id`` must be explicit, which
catches typos).  Since the generators are involutions, cycles longer than two
are rejected at parse time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .classify import lcm_finite_orders
from .euler import SymbolicVolume, euler_characteristic, manifold_invariants
from .gram import is_cofinite_simplex, is_hyperbolic
from .symbol import CoxeterSymbol, INFINITY, split_statements
from .torsion import TorsionInventory, inventory

Perm = tuple[int, ...]


class ActionError(ValueError):
    """Malformed action source or action/symbol mismatch."""


@dataclass(frozen=True)
class PermutationAction:
    symbol: CoxeterSymbol
    name: str
    degree: int
    perms: dict[str, Perm] = field(compare=False)

    def __post_init__(self):
        for g in self.symbol.generators:
            if g not in self.perms:
                raise ActionError(f"missing permutation for generator {g!r}")
        for g, p in self.perms.items():
            if len(p) != self.degree:
                raise ActionError(f"permutation for {g!r} has wrong degree")

    def perm_of_word(self, word: Sequence[str]) -> Perm:
        p = tuple(range(self.degree))
        for g in word:
            q = self.perms[g]
            p = tuple(q[x] for x in p)
        return p


# -- parsing ------------------------------------------------------------------


def _parse_cycles(text: str, degree: int, gen: str, line_no: int) -> Perm:
    text = text.strip()
    if text == "id":
        return tuple(range(degree))
    if not text.startswith("("):
        raise ActionError(f"line {line_no}: expected cycles or 'id' for {gen!r}")
    perm = list(range(degree))
    used: set[int] = set()
    depth_open = False
    current: list[int] = []
    token = ""

    def close_token():
        nonlocal token
        if token:
            current.append(int(token))
            token = ""

    for ch in text:
        if ch == "(":
            if depth_open:
                raise ActionError(f"line {line_no}: nested '(' in cycles for {gen!r}")
            depth_open = True
            current = []
        elif ch == ")":
            close_token()
            if not depth_open:
                raise ActionError(f"line {line_no}: unbalanced ')' for {gen!r}")
            depth_open = False
            if len(current) > 2:
                raise ActionError(
                    f"line {line_no}: cycle {tuple(current)} of {gen!r} is longer than a "
                    "transposition; generators are involutions"
                )
            for p in current:
                if not 1 <= p <= degree:
                    raise ActionError(f"line {line_no}: point {p} out of range 1..{degree}")
                if p - 1 in used:
                    raise ActionError(f"line {line_no}: point {p} repeated for {gen!r}")
                used.add(p - 1)
            if len(current) == 2:
                a, b = current[0] - 1, current[1] - 1
                perm[a], perm[b] = b, a
        elif ch.isdigit():
            token += ch
        elif ch in " ,\t":
            close_token()
        else:
            raise ActionError(f"line {line_no}: unexpected character {ch!r} in cycles for {gen!r}")
    if depth_open:
        raise ActionError(f"line {line_no}: unbalanced '(' for {gen!r}")
    return tuple(perm)


def parse_action(text: str, sym: CoxeterSymbol) -> PermutationAction:
    """Parse action DSL against an already parsed symbol."""
    stmts = split_statements(text)
    if not stmts:
        raise ActionError("empty action source")
    line_no, head = stmts[0]
    words = head.split()
    if len(words) != 6 or words[0] != "action" or words[2] != "on" or words[4] != "for":
        raise ActionError(f"line {line_no}: expected 'action <name> on <N> for <symbol>;'")
    name, count = words[1], words[3]
    try:
        degree = int(count)
    except ValueError:
        raise ActionError(f"line {line_no}: bad degree {count!r}") from None
    if degree < 1:
        raise ActionError(f"line {line_no}: degree must be >= 1")
    perms: dict[str, Perm] = {}
    for line_no, stmt in stmts[1:]:
        if ":" not in stmt:
            raise ActionError(f"line {line_no}: expected '<generator>: <cycles|id>'")
        gen, rhs = stmt.split(":", 1)
        gen = gen.strip()
        if gen not in sym.generators:
            raise ActionError(f"line {line_no}: unknown generator {gen!r}")
        if gen in perms:
            raise ActionError(f"line {line_no}: duplicate line for generator {gen!r}")
        perms[gen] = _parse_cycles(rhs, degree, gen, line_no)
    missing = [g for g in sym.generators if g not in perms]
    if missing:
        raise ActionError(f"missing permutation line for generator(s) {', '.join(missing)}")
    return PermutationAction(sym, name, degree, perms)


def emit_action(a: PermutationAction, symbol_name: str = "gamma") -> str:
    """Canonical action DSL text; byte-stable."""
    lines = [f"action {a.name} on {a.degree} for {symbol_name};"]
    for g in a.symbol.generators:
        p = a.perms[g]
        cycles = []
        for i in range(a.degree):
            j = p[i]
            if j > i:
                cycles.append(f"({i + 1} {j + 1})")
        lines.append(f"{g}: {''.join(cycles) if cycles else 'id'};")
    return "\n".join(lines) + "\n"


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # "involution" | "relator"
    generators: tuple[str, ...]
    witness: int  # 1-based point

    def __str__(self):
        return f"{self.kind} {' '.join(self.generators)} at point {self.witness}"


def verify_action(a: PermutationAction) -> list[Violation]:
    """Involutivity plus every finite relator; empty list means valid."""
    out: list[Violation] = []
    gens = a.symbol.generators
    for g in gens:
        p = a.perms[g]
        for i in range(a.degree):
            if p[p[i]] != i:
                out.append(Violation("involution", (g,), i + 1))
                break
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            m = a.symbol.label(g, h)
            if m == INFINITY:
                continue
            pg, ph = a.perms[g], a.perms[h]
            for start in range(a.degree):
                x = start
                for _ in range(m):
                    x = ph[pg[x]]
                if x != start:
                    out.append(Violation("relator", (g, h), start + 1))
                    break
    return out


# -- orbits, tensors, blocks ---------------------------------------------------


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[tuple[int, ...], ...]  # 0-based points, each sorted

    @property
    def transitive(self) -> bool:
        return len(self.orbits) == 1


def orbits(a: PermutationAction) -> OrbitDecomposition:
    seen = [False] * a.degree
    out = []
    for start in range(a.degree):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = [start]
        while queue:
            x = queue.pop()
            for g in a.symbol.generators:
                y = a.perms[g][x]
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(tuple(sorted(comp)))
    return OrbitDecomposition(tuple(out))


def is_transitive(a: PermutationAction) -> bool:
    return orbits(a).transitive


def tensor(a1: PermutationAction, a2: PermutationAction,
           seed: tuple[int, int] = (1, 1)) -> PermutationAction:
    """Orbit of ``seed`` (1-based pair) under the diagonal action.

    Points are renumbered 1..orbit size by breadth-first discovery from the
    seed, generators in declaration order, so the result is deterministic.
    """
    if a1.symbol is not a2.symbol and a1.symbol != a2.symbol:
        raise ActionError("tensor factors must share a symbol")
    s = (seed[0] - 1, seed[1] - 1)
    if not (0 <= s[0] < a1.degree and 0 <= s[1] < a2.degree):
        raise ActionError(f"seed {seed} out of range")
    numbering = {s: 0}
    order = [s]
    head = 0
    while head < len(order):
        u, v = order[head]
        head += 1
        for g in a1.symbol.generators:
            img = (a1.perms[g][u], a2.perms[g][v])
            if img not in numbering:
                numbering[img] = len(order)
                order.append(img)
    degree = len(order)
    perms = {}
    for g in a1.symbol.generators:
        p1, p2 = a1.perms[g], a2.perms[g]
        perms[g] = tuple(numbering[(p1[u], p2[v])] for (u, v) in order)
    return PermutationAction(a1.symbol, f"{a1.name}*{a2.name}", degree, perms)


def tensor_orbits(a1: PermutationAction, a2: PermutationAction) -> list[PermutationAction]:
    """One tensor action per orbit of the product, in discovery order."""
    seen: set[tuple[int, int]] = set()
    out = []
    for u in range(a1.degree):
        for v in range(a2.degree):
            if (u, v) in seen:
                continue
            t = tensor(a1, a2, (u + 1, v + 1))
            # recover which product points this orbit visited
            pts = {(u, v)}
            frontier = [(u, v)]
            while frontier:
                x, y = frontier.pop()
                for g in a1.symbol.generators:
                    img = (a1.perms[g][x], a2.perms[g][y])
                    if img not in pts:
                        pts.add(img)
                        frontier.append(img)
            seen |= pts
            out.append(t)
    return out


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]  # partition of 0..N-1, blocks sorted
    block_size: int

    @property
    def proper(self) -> bool:
        total = sum(len(b) for b in self.blocks)
        return 1 < self.block_size < total


def _min_block_system(a: PermutationAction, x: int) -> BlockSystem:
    parent = list(range(a.degree))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri == rj:
            return None
        parent[rj] = ri
        return ri, rj

    queue = [(0, x)]
    union(0, x)
    while queue:
        u, v = queue.pop()
        for g in a.symbol.generators:
            gu, gv = a.perms[g][u], a.perms[g][v]
            if union(gu, gv) is not None:
                queue.append((gu, gv))
    groups: dict[int, list[int]] = {}
    for i in range(a.degree):
        groups.setdefault(find(i), []).append(i)
    blocks = tuple(sorted(tuple(sorted(b)) for b in groups.values()))
    return BlockSystem(blocks, len(blocks[0]))


def block_systems(a: PermutationAction) -> list[BlockSystem]:
    """Minimal proper block systems of a transitive action, deduplicated."""
    if not is_transitive(a):
        raise ActionError("block systems are defined for transitive actions")
    seen = set()
    out = []
    for x in range(1, a.degree):
        system = _min_block_system(a, x)
        if not system.proper:
            continue
        if system.blocks in seen:
            continue
        seen.add(system.blocks)
        out.append(system)
    return out


def is_primitive(a: PermutationAction) -> bool:
    return not block_systems(a)


def blocks_action(a: PermutationAction, system: BlockSystem) -> PermutationAction:
    """Induced action on the blocks of an invariant partition."""
    where = {}
    for bi, block in enumerate(system.blocks):
        for p in block:
            where[p] = bi
    perms = {}
    for g in a.symbol.generators:
        p = a.perms[g]
        perms[g] = tuple(where[p[block[0]]] for block in system.blocks)
    return PermutationAction(a.symbol, f"{a.name}/blocks{system.block_size}", len(system.blocks), perms)


# -- torsion freeness and orientability ----------------------------------------


def avoids(a: PermutationAction, word: Sequence[str]) -> bool:
    """True when the word's permutation has no fixed point."""
    p = a.perm_of_word(word)
    return all(p[i] != i for i in range(a.degree))


def is_torsion_free(a: PermutationAction, inv: TorsionInventory) -> tuple[bool, list[tuple]]:
    """Check every inventory word; returns overall verdict and per-word report."""
    report = []
    ok = True
    for entry in inv.entries:
        good = avoids(a, entry.word)
        ok = ok and good
        report.append((entry, good))
    return ok, report


def orientable_orbits(a: PermutationAction) -> list[tuple[tuple[int, ...], bool]]:
    """Two-colourability of each orbit under parity-flipping generator edges."""
    out = []
    for orbit in orbits(a).orbits:
        colour = {orbit[0]: 0}
        queue = [orbit[0]]
        good = True
        while queue and good:
            x = queue.pop()
            for g in a.symbol.generators:
                y = a.perms[g][x]
                if y == x:
                    good = False  # a generator fixes a point: odd word with a fixed point
                    break
                if y in colour:
                    if colour[y] == colour[x]:
                        good = False  # odd cycle: some odd-length word fixes a point
                        break
                else:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
        out.append((orbit, good))
    return out


def is_orientable(a: PermutationAction) -> bool:
    return all(good for _orbit, good in orientable_orbits(a))


# -- divisibility certificates --------------------------------------------------


def _closure(perms: Iterable[Perm], degree: int) -> list[Perm]:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    elems = [ident]
    gens = list(perms)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    return elems


@dataclass(frozen=True)
class DivisibilityReport:
    preconditions_ok: bool
    reasons: tuple[str, ...]
    subgroup_order: Optional[int]
    lcm_degrees: int
    orbit_sizes: tuple[int, ...]
    lcm_divides_all: bool
    product_divides_all: Optional[bool]  # |Omega_1| * |F| | orbit, when applicable


def check_divisibility(a1: PermutationAction, a2: PermutationAction,
                       f_words: Sequence[Sequence[str]]) -> DivisibilityReport:
    """Orbit-size divisibility certificate for the product action.

    The lcm of the two degrees always divides every orbit size.  When the
    subgroup generated by ``f_words`` fixes a point of the first action and
    acts freely on the second, the product degree1 * |F| also divides every
    orbit size; |F| is read off the closure on the second action, where the
    subgroup acts faithfully because it acts freely.
    """
    sizes = tuple(t.degree for t in tensor_orbits(a1, a2))
    lcm_deg = math.lcm(a1.degree, a2.degree)
    lcm_ok = all(s % lcm_deg == 0 for s in sizes)
    reasons: list[str] = []
    f_order: Optional[int] = None
    product_ok: Optional[bool] = None
    if f_words:
        gens1 = [a1.perm_of_word(w) for w in f_words]
        gens2 = [a2.perm_of_word(w) for w in f_words]
        fixed1 = [i for i in range(a1.degree) if all(g[i] == i for g in gens1)]
        if not fixed1:
            reasons.append("subgroup fixes no point of the first action")
        closure2 = _closure(gens2, a2.degree)
        ident = tuple(range(a2.degree))
        for p in closure2:
            if p != ident and any(p[i] == i for i in range(a2.degree)):
                reasons.append("a nonidentity element fixes a point of the second action")
                break
        if not reasons:
            f_order = len(closure2)
            product_ok = all(s % (a1.degree * f_order) == 0 for s in sizes)
    return DivisibilityReport(not reasons, tuple(reasons), f_order, lcm_deg, sizes,
                              lcm_ok, product_ok)


# -- certificates ----------------------------------------------------------------


@dataclass(frozen=True)
class ManifoldCertificate:
    symbol: CoxeterSymbol
    action: PermutationAction
    dimension: int
    valid: bool
    checks: tuple[tuple[str, bool, str], ...]  # (name, passed, witness-or-empty)
    index: int
    chi: Fraction
    volume: Optional[SymbolicVolume]
    orientable: bool

    def lines(self) -> list[str]:
        out = [
            f"valid={'true' if self.valid else 'false'}",
            f"index={self.index}",
            f"chi={self.chi}",
            f"volume={self.volume if self.volume is not None else 'unavailable'}",
            f"orientable={'true' if self.orientable else 'false'}",
        ]
        for name, passed, witness in self.checks:
            tail = f":{witness}" if (witness and not passed) else ""
            out.append(f"check.{name}={'pass' if passed else 'fail'}{tail}")
        return out


def certify(sym: CoxeterSymbol, act: PermutationAction, dim: Optional[int] = None,
            simplex_volume: Optional[SymbolicVolume] = None,
            c: Optional[dict] = None) -> ManifoldCertificate:
    """Run the full battery of geometric and freeness checks on an action."""
    n = sym.rank - 1 if dim is None else dim
    checks: list[tuple[str, bool, str]] = []

    hyp = is_hyperbolic(sym, c=c, n=n)
    checks.append(("hyperbolic", hyp, f"signature is not (1,{n})"))

    if n == sym.rank - 1:
        rep = is_cofinite_simplex(sym)
        checks.append(("cofinite_simplex", rep.is_simplex, "; ".join(rep.failures)))
    else:
        checks.append(("cofinite_simplex", False,
                       f"unsupported: {sym.rank} generators cannot bound a {n}-simplex"))

    violations = verify_action(act)
    checks.append(("action_valid", not violations, "; ".join(map(str, violations[:3]))))

    transitive = is_transitive(act)
    checks.append(("transitive", transitive, f"{len(orbits(act).orbits)} orbits"))

    inv = inventory(sym)
    free, report = is_torsion_free(act, inv)
    bad = [e.word for e, good in report if not good]
    checks.append(("torsion_free", free,
                   f"fixed point under {' '.join(bad[0])}" if bad else ""))

    orientable = is_orientable(act)

    chi_gamma = euler_characteristic(sym)
    index = act.degree
    chi_m = chi_gamma * index
    volume: Optional[SymbolicVolume] = None
    try:
        chi_m, volume = manifold_invariants(chi_gamma, index, n, simplex_volume)
    except ValueError:
        volume = None
    valid = all(passed for _name, passed, _w in checks)
    return ManifoldCertificate(sym, act, n, valid, tuple(checks), index, chi_m,
                               volume, orientable)
