"""Backtracking search for transitive torsion-free actions of a given degree.

Since every generator is itself a prime-order torsion element, a torsion-free
action must let every generator act as a fixed-point-free involution, so the
search space is one partial perfect matching per generator.  Dihedral orbits
of each finite relator pair are closed eagerly (a partial alternating path of
maximal length forces its closing edge, and a closed cycle must have length
dividing twice the relator order), every inventory word is traced for partial
fixed points after each propagation round, and new points are introduced in
first-orbit canonical order, which both breaks the point-relabelling symmetry
and guarantees transitivity of completed assignments.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .action import PermutationAction, is_orientable, is_torsion_free, is_transitive, verify_action
from .classify import lcm_finite_orders
from .symbol import CoxeterSymbol, INFINITY
from .torsion import TorsionInventory, inventory


@dataclass
class SearchConfig:
    degree: int
    node_budget: int = 10**7
    time_budget: float = 600.0
    require_orientable: bool = False
    max_solutions: Optional[int] = None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class SearchResult:
    actions: list[PermutationAction]
    exhausted: bool
    nodes: int


class _State:
    __slots__ = ("imgs", "trail", "introduced", "parity")

    def __init__(self, n_gens: int, degree: int, track_parity: bool):
        self.imgs = [[-1] * degree for _ in range(n_gens)]
        self.trail: list[tuple[int, int, int]] = []
        self.introduced = 1  # point 0 exists from the start
        self.parity = [0] + [-1] * (degree - 1) if track_parity else None


def search_torsion_free(sym: CoxeterSymbol, cfg: SearchConfig,
                        inv: Optional[TorsionInventory] = None) -> SearchResult:
    """All transitive torsion-free actions of the given degree, up to budget.

    Degrees not divisible by the lcm of finite-subgroup orders are rejected
    immediately: that lcm divides the degree of every torsion-free action.
    """
    if sym.rank == 0:
        raise ValueError("symbol has no generators")
    lcm = lcm_finite_orders(sym)
    if cfg.degree % lcm != 0:
        return SearchResult([], True, 0)
    inv = inv or inventory(sym)
    return _Searcher(sym, cfg, inv).run()


class _Searcher:
    def __init__(self, sym: CoxeterSymbol, cfg: SearchConfig, inv: TorsionInventory):
        self.sym = sym
        self.cfg = cfg
        self.gen_index = {g: i for i, g in enumerate(sym.generators)}
        self.n_gens = sym.rank
        self.degree = cfg.degree
        words = {tuple(self.gen_index[g] for g in e.word) for e in inv.entries}
        self.words = sorted(words, key=lambda w: (len(w), w))
        self.pairs = []  # (g, h, m) with finite m, both orders for lookup
        for i, a in enumerate(sym.generators):
            for b in sym.generators[i + 1:]:
                m = sym.label(a, b)
                if m == INFINITY:
                    continue
                self.pairs.append((self.gen_index[a], self.gen_index[b], m))
        self.pairs_of: list[list[tuple[int, int]]] = [[] for _ in range(self.n_gens)]
        for g, h, m in self.pairs:
            self.pairs_of[g].append((h, m))
            self.pairs_of[h].append((g, m))
        self.nodes = 0
        self.deadline = time.monotonic() + cfg.time_budget
        self.budget_hit = False
        self.solutions: list[PermutationAction] = []

    # -- assignment machinery -------------------------------------------------

    def _assign(self, st: _State, g: int, a: int, b: int, queue: list) -> bool:
        """Record img[g][a] = b (and symmetrically); False on conflict."""
        img = st.imgs[g]
        if a == b:
            return False
        for x, y in ((a, b), (b, a)):
            cur = img[x]
            if cur == -1:
                img[x] = y
                st.trail.append((g, x, -1))
            elif cur != y:
                return False
        if st.parity is not None:
            for x, y in ((a, b), (b, a)):
                if st.parity[x] != -1 and st.parity[y] == -1:
                    st.parity[y] = 1 - st.parity[x]
                    st.trail.append((-1, y, -1))
            if st.parity[a] != -1 and st.parity[b] != -1 and st.parity[a] == st.parity[b]:
                return False
        queue.append((g, a))
        return True

    def _undo(self, st: _State, mark: int, introduced_mark: int):
        while len(st.trail) > mark:
            g, x, _ = st.trail.pop()
            if g == -1:
                st.parity[x] = -1
            else:
                st.imgs[g][x] = -1
        st.introduced = introduced_mark

    def _propagate(self, st: _State, queue: list) -> bool:
        while queue:
            g, start = queue.pop()
            for h, m in self.pairs_of[g]:
                if not self._check_pair_orbit(st, g, h, m, start, queue):
                    return False
        return self._scan_inventory(st, queue)

    def _check_pair_orbit(self, st: _State, g: int, h: int, m: int, p: int, queue: list) -> bool:
        arrs = (st.imgs[g], st.imgs[h])
        # walk forward applying g, h alternately
        seq = [p]
        phase = 0
        x = p
        closed = False
        while True:
            y = arrs[phase][x]
            if y == -1:
                break
            if y == p and phase == 1:
                closed = True
                break
            if y == p and phase == 0 and len(seq) > 1:
                # odd-position return: the walk came back on a g-edge, cycle
                closed = True
                break
            seq.append(y)
            phase ^= 1
            x = y
        if closed:
            if len(seq) % 2:
                return False
            k = len(seq) // 2
            return m % k == 0
        tail_phase = phase  # edge type missing at the right end
        # extend to the left: the edge types left of p start with h
        left = []
        phase = 1
        x = p
        while True:
            y = arrs[phase][x]
            if y == -1:
                break
            left.append(y)
            phase ^= 1
            x = y
        head_phase = phase
        total = len(seq) + len(left)
        if total > 2 * m:
            return False
        if total == 2 * m:
            if head_phase != tail_phase:
                return False
            a = left[-1] if left else p
            b = seq[-1]
            return self._assign(st, (g, h)[tail_phase], a, b, queue)
        return True

    def _scan_inventory(self, st: _State, queue: list) -> bool:
        imgs = st.imgs
        for word in self.words:
            for p in range(st.introduced):
                x = p
                complete = True
                for g in word:
                    x = imgs[g][x]
                    if x == -1:
                        complete = False
                        break
                if complete and x == p:
                    return False
        return True

    # -- depth-first search ----------------------------------------------------

    def run(self) -> SearchResult:
        st = _State(self.n_gens, self.degree, self.cfg.require_orientable)
        complete = self._dfs(st)
        return SearchResult(self.solutions, complete and not self.budget_hit, self.nodes)

    def _next_slot(self, st: _State) -> Optional[tuple[int, int]]:
        for p in range(st.introduced):
            for g in range(self.n_gens):
                if st.imgs[g][p] == -1:
                    return p, g
        return None

    def _dfs(self, st: _State) -> bool:
        self.nodes += 1
        if self.nodes > self.cfg.node_budget or (self.nodes % 1024 == 0 and time.monotonic() > self.deadline):
            self.budget_hit = True
            return False
        slot = self._next_slot(st)
        if slot is None:
            if st.introduced == self.degree:
                self._emit(st)
                done = self.cfg.max_solutions is not None and len(self.solutions) >= self.cfg.max_solutions
                return not done
            return True  # orbit closed early: dead branch, keep searching siblings
        p, g = slot
        candidates = [q for q in range(st.introduced) if q != p and st.imgs[g][q] == -1]
        if st.introduced < self.degree:
            candidates.append(st.introduced)
        for q in candidates:
            mark = len(st.trail)
            intro_mark = st.introduced
            if q == st.introduced:
                st.introduced += 1
            queue: list = []
            ok = self._assign(st, g, p, q, queue) and self._propagate(st, queue)
            if ok:
                if not self._dfs(st):
                    self._undo(st, mark, intro_mark)
                    return False
            self._undo(st, mark, intro_mark)
        return True

    def _emit(self, st: _State):
        perms = {
            name: tuple(st.imgs[i])
            for i, name in enumerate(self.sym.generators)
        }
        act = PermutationAction(self.sym, f"search{len(self.solutions)}", self.degree, perms)
        # independent re-verification through the action module
        if verify_action(act) or not is_transitive(act):
            return
        ok, _report = is_torsion_free(act, inventory(self.sym))
        if not ok:
            return
        if self.cfg.require_orientable and not is_orientable(act):
            return
        self.solutions.append(act)
