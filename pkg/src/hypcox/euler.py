"""Exact Euler characteristics and volumes of the quotient manifolds.

The Euler characteristic of a Coxeter group is the signed sum over chains in
its spherical poset, weighted by the order of the chain's bottom group.  The
chain sum is evaluated by a per-node signed-chain-count recursion rather than
explicit enumeration, so large posets stay cheap; a literal enumeration is
kept as a cross-checking oracle.  Volumes in even dimensions come from the
Gauss-Bonnet proportionality constant; odd-dimensional volumes are index
multiples of an externally supplied fundamental-domain volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .classify import SphericalPoset, spherical_poset
from .symbol import CoxeterSymbol

# Apery's constant zeta(3), correct to double precision.
ZETA3 = 1.2020569031595942854


def _constant_value(tag: str) -> float:
    if tag == "1":
        return 1.0
    if tag == "zeta3":
        return ZETA3
    if tag == "pi":
        return math.pi
    if tag.startswith("pi^"):
        return math.pi ** int(tag[3:])
    raise ValueError(f"unknown symbolic constant {tag!r}")


@dataclass(frozen=True)
class SymbolicVolume:
    """Exact rational multiple of a named constant, with a float shadow."""

    coefficient: Fraction
    constant: str = "1"

    def __post_init__(self):
        _constant_value(self.constant)
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def approx(self) -> float:
        return float(self.coefficient) * _constant_value(self.constant)

    def scaled(self, factor) -> "SymbolicVolume":
        return SymbolicVolume(self.coefficient * Fraction(factor), self.constant)

    def __str__(self):
        if self.constant == "1":
            return str(self.coefficient)
        return f"{self.coefficient}*{self.constant}"


def parse_symbolic_volume(coeff: str, constant: str) -> SymbolicVolume:
    return SymbolicVolume(Fraction(coeff), constant)


# -- chain sums over the spherical poset --------------------------------------


def _poset_masks(poset: SphericalPoset) -> tuple[list[int], dict[int, int]]:
    """Poset nodes as bitmasks over generator declaration indices."""
    sym = poset.symbol
    bit = {g: 1 << i for i, g in enumerate(sym.generators)}
    masks = []
    orders = {}
    for key, node in poset.nodes.items():
        m = 0
        for g in key:
            m |= bit[g]
        masks.append(m)
        orders[m] = node.order
    masks.sort(key=lambda m: (-m.bit_count(), m))
    return masks, orders


def _chain_sum(masks: list[int], orders: dict[int, int], allowed: Optional[int] = None,
               top_contains: Optional[int] = None) -> Fraction:
    """Sum of (-1)^k / |bottom| over chains, without enumerating them.

    The recursion counts signed chains upward from each bottom:
    f(s) = [chain may stop at s] - sum_{t > s} f(t).  ``allowed`` restricts
    the poset to subsets of the given mask; ``top_contains`` keeps only the
    chains whose maximal element contains the given mask.
    """
    if allowed is not None:
        masks = [m for m in masks if m & ~allowed == 0]
    f: dict[int, Fraction] = {}
    # masks are sorted by decreasing popcount, so supersets come first
    for idx, m in enumerate(masks):
        stop_here = top_contains is None or (top_contains & m) == top_contains
        total = Fraction(1 if stop_here else 0)
        for t in masks[:idx]:
            if t != m and (t & m) == m:
                total -= f[t]
        f[m] = total
    chi = Fraction(0)
    for m in masks:
        chi += f[m] / orders[m]
    return chi


def euler_characteristic(sym: CoxeterSymbol, poset: Optional[SphericalPoset] = None) -> Fraction:
    """Exact Euler characteristic of the Coxeter group of the symbol."""
    poset = poset or spherical_poset(sym)
    masks, orders = _poset_masks(poset)
    return _chain_sum(masks, orders)


def chain_enumeration_chi(sym: CoxeterSymbol, chain_cap: int = 10**6) -> Fraction:
    """Oracle: literally enumerate every chain in the spherical poset."""
    poset = spherical_poset(sym)
    masks, orders = _poset_masks(poset)
    total = Fraction(0)
    count = 0

    def extend(bottom: int, current: int, sign: int):
        nonlocal total, count
        count += 1
        if count > chain_cap:
            raise RuntimeError("chain cap exceeded")
        total += Fraction(sign, orders[bottom])
        for t in masks:
            if t != current and (current & t) == current:
                extend(bottom, t, -sign)

    for m in masks:
        extend(m, m, 1)
    return total


def sigma_psi(sym: CoxeterSymbol, psi: Iterable[str]) -> tuple[Fraction, Fraction]:
    """Chain sum restricted to chains reaching psi, computed two ways.

    The direct side keeps the chains whose maximal element contains psi
    (for psi empty that is every chain, so both sides give chi; for psi of
    infinite type the restricted sum is empty, so both sides vanish).  The
    other side is the inclusion-exclusion expansion over subsets of psi;
    equality of the two is a cross-check of the whole chain machinery.
    """
    sym_bits = {g: 1 << i for i, g in enumerate(sym.generators)}
    psi = list(psi)
    psi_mask = 0
    for g in psi:
        psi_mask |= sym_bits[g]
    poset = spherical_poset(sym)
    masks, orders = _poset_masks(poset)
    direct = _chain_sum(masks, orders, top_contains=psi_mask)
    full = (1 << sym.rank) - 1
    incl = Fraction(0)
    for sub in _submasks(psi_mask):
        incl += (-1) ** sub.bit_count() * _chain_sum(masks, orders, allowed=full & ~sub)
    return direct, incl


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def serre_sum(sym: CoxeterSymbol) -> Fraction:
    """Alternating sum of chi over all node-deleted subsymbols.

    Equals zero whenever the group is infinite; for finite groups it is
    reported as computed.
    """
    poset = spherical_poset(sym)
    masks, orders = _poset_masks(poset)
    full = (1 << sym.rank) - 1
    total = Fraction(0)
    for delta in _submasks(full):
        total += (-1) ** delta.bit_count() * _chain_sum(masks, orders, allowed=full & ~delta)
    return total


# -- volumes ------------------------------------------------------------------


def gauss_bonnet_constant(n: int) -> SymbolicVolume:
    """Proportionality constant kappa_n with vol = kappa_n * chi, n even."""
    if n % 2 or n < 2:
        raise ValueError("the Gauss-Bonnet constant is defined for even n >= 2")
    coeff = Fraction(2**n * math.factorial(n // 2), math.factorial(n)) * (-1) ** (n // 2)
    return SymbolicVolume(coeff, "pi" if n == 2 else f"pi^{n // 2}")


def manifold_invariants(
    chi_gamma: Fraction,
    index: int,
    dim: int,
    simplex_volume: Optional[SymbolicVolume] = None,
) -> tuple[Fraction, Optional[SymbolicVolume]]:
    """Euler characteristic and volume of an index-``index`` quotient.

    Even dimensions use the Gauss-Bonnet constant; odd dimensions require the
    volume of the reflection group's fundamental domain and force chi = 0.
    """
    chi_m = Fraction(chi_gamma) * index
    if dim % 2 == 0:
        kappa = gauss_bonnet_constant(dim)
        return chi_m, kappa.scaled(chi_m)
    if chi_m != 0:
        raise ValueError("odd-dimensional quotients must have zero Euler characteristic")
    if simplex_volume is None:
        raise ValueError("odd dimension needs the fundamental-domain volume")
    return chi_m, simplex_volume.scaled(index)
