"""Gram matrices of Coxeter symbols, signatures, and simplex cofiniteness.

Every entry is kept as a double, and also exactly in Q(sqrt2, sqrt3) when
all edge labels lie in {2, 3, 4, 6} and infinity-edge weights are rational.
Signatures are computed twice on that exact path: floating eigenvalues with a
tolerance, and an exact symmetric elimination whose pivot signs are decided
in the field; the two must agree, which guards the degenerate (affine) cases
where an eigenvalue is exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .classify import AFFINE, FINITE, classify
from .qfield import Q23, cos_pi_over
from .symbol import INFINITY, CoxeterSymbol

DEFAULT_TOL = 1e-9


class GramError(ValueError):
    pass


@dataclass(frozen=True)
class GramMatrix:
    symbol: CoxeterSymbol
    values: np.ndarray = field(compare=False)  # float64, symmetric
    exact: Optional[tuple[tuple[Q23, ...], ...]]  # None when off the exact path

    @property
    def side(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class Signature:
    negatives: int
    positives: int
    zeros: int
    tol: float

    def as_pair(self) -> tuple[int, int]:
        return self.negatives, self.positives

    def __str__(self):
        return f"({self.negatives},{self.positives},{self.zeros})"


def _normalise_c(sym: CoxeterSymbol, c: Optional[Mapping]) -> dict[frozenset, object]:
    out: dict[frozenset, object] = {}
    for pair, label in sym.edges.items():
        if label != INFINITY:
            continue
        out[pair] = -1
    if c:
        for key, value in c.items():
            pair = frozenset(key)
            if pair not in out:
                a, b = sorted(key)
                raise GramError(f"{a}-{b} is not an infinity edge")
            if not (value <= -1):
                raise GramError(f"infinity-edge weight must be <= -1, got {value!r}")
            out[pair] = value
    return out


def gram_matrix(sym: CoxeterSymbol, c: Optional[Mapping] = None) -> GramMatrix:
    """Cosine matrix of the symbol; infinity edges default to weight -1."""
    cmap = _normalise_c(sym, c)
    n = sym.rank
    gens = sym.generators
    values = np.eye(n)
    exact_ok = True
    exact = [[Q23(0)] * n for _ in range(n)]
    for i in range(n):
        exact[i][i] = Q23(1)
    for i in range(n):
        for j in range(i + 1, n):
            m = sym.label(gens[i], gens[j])
            if m == INFINITY:
                w = cmap[frozenset((gens[i], gens[j]))]
                values[i, j] = values[j, i] = float(w)
                if isinstance(w, (int, Fraction)):
                    e = Q23(Fraction(w))
                else:
                    exact_ok = False
                    e = None
            else:
                cos = cos_pi_over(m)
                if cos is None:
                    exact_ok = False
                    e = None
                    values[i, j] = values[j, i] = -math.cos(math.pi / m)
                else:
                    e = -cos
                    values[i, j] = values[j, i] = float(e)
            if exact_ok:
                exact[i][j] = exact[j][i] = e
    return GramMatrix(sym, values, tuple(tuple(r) for r in exact) if exact_ok else None)


def _exact_signature(rows: Sequence[Sequence[Q23]]) -> tuple[int, int, int]:
    """Signature by symmetric elimination with exact pivot signs."""
    n = len(rows)
    m = {(i, j): rows[i][j] for i in range(n) for j in range(n)}
    active = list(range(n))
    neg = pos = zero = 0
    while active:
        k = next((a for a in active if m[a, a]), None)
        if k is not None:
            piv = m[k, k]
            if piv.sign() > 0:
                pos += 1
            else:
                neg += 1
            rest = [a for a in active if a != k]
            inv = piv.inverse()
            for i in rest:
                if not m[i, k]:
                    continue
                factor = m[i, k] * inv
                for j in rest:
                    m[i, j] = m[i, j] - factor * m[k, j]
            active = rest
            continue
        offdiag = next(
            ((a, b) for ai, a in enumerate(active) for b in active[ai + 1:] if m[a, b]), None
        )
        if offdiag is None:
            zero += len(active)
            break
        # 2x2 block [[0, a], [a, 0]] contributes one positive and one negative
        k, l = offdiag
        a_inv = m[k, l].inverse()
        neg += 1
        pos += 1
        rest = [x for x in active if x not in (k, l)]
        for i in rest:
            for j in rest:
                corr = (m[i, k] * m[l, j] + m[i, l] * m[k, j]) * a_inv
                m[i, j] = m[i, j] - corr
        active = rest
    return neg, pos, zero


def signature(g: GramMatrix, tol: float = DEFAULT_TOL) -> Signature:
    """Eigenvalue sign counts, cross-checked exactly when entries allow."""
    if tol <= 0:
        raise GramError("tolerance must be positive")
    eig = np.linalg.eigvalsh(g.values)
    neg = int((eig < -tol).sum())
    pos = int((eig > tol).sum())
    zero = g.side - neg - pos
    if g.exact is not None:
        exact = _exact_signature(g.exact)
        if exact != (neg, pos, zero):
            raise GramError(
                f"numeric signature {(neg, pos, zero)} disagrees with exact {exact}; "
                "tolerance unsuitable"
            )
    return Signature(neg, pos, zero, tol)


def is_hyperbolic(sym: CoxeterSymbol, c: Optional[Mapping] = None, n: Optional[int] = None,
                  tol: float = DEFAULT_TOL) -> bool:
    """True when the Gram matrix has signature (1, n) with no kernel."""
    if n is None:
        n = sym.rank - 1
    sig = signature(gram_matrix(sym, c), tol)
    return sig.negatives == 1 and sig.positives == n and sig.zeros == 0


@dataclass(frozen=True)
class SimplexReport:
    supported: bool
    is_simplex: bool
    dimension: int
    ideal_vertices: tuple[tuple[str, ...], ...]
    failures: tuple[str, ...]

    @property
    def cocompact(self) -> bool:
        return self.is_simplex and not self.ideal_vertices


def is_cofinite_simplex(sym: CoxeterSymbol, *, infinite_edge_affine: bool = False) -> SimplexReport:
    """Check the simplex condition on the poset of standard subgroups.

    With k generators the candidate dimension is k-1: every subset of fewer
    than k-1 generators must be finite, every (k-1)-subset finite or affine
    component-wise (the affine ones are the ideal vertices), and the full
    set must be neither.
    """
    from itertools import combinations

    k = sym.rank
    n = k - 1
    if k < 3:
        return SimplexReport(False, False, n, (), ("needs at least 3 generators",))
    failures: list[str] = []
    ideal: list[tuple[str, ...]] = []
    for size in range(1, k):
        for subset in combinations(sym.generators, size):
            cls = classify(sym.restrict(subset), infinite_edge_affine=infinite_edge_affine)
            if size < n:
                if not cls.is_finite:
                    failures.append(f"{{{' '.join(subset)}}} is not finite")
            else:
                kinds = {c.kind for c in cls.components}
                if not kinds <= {FINITE, AFFINE}:
                    failures.append(f"{{{' '.join(subset)}}} has a non-finite, non-affine part")
                elif AFFINE in kinds:
                    ideal.append(subset)
    full = classify(sym, infinite_edge_affine=infinite_edge_affine)
    if full.is_finite:
        failures.append("the full symbol is finite")
    elif full.is_affine:
        failures.append("the full symbol is affine")
    return SimplexReport(True, not failures, n, tuple(ideal), tuple(failures))
