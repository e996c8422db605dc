import random
from fractions import Fraction

import numpy as np
import pytest

from hypcox.classify import IsoType, canonical_symbol
from hypcox.gram import (
    GramError,
    gram_matrix,
    is_cofinite_simplex,
    is_hyperbolic,
    signature,
)
from hypcox.qfield import Q23
from hypcox.symbol import CoxeterSymbol, parse_symbol

from conftest import triangle_symbol


def test_a2_entries():
    g = gram_matrix(canonical_symbol(IsoType("A", 2)))
    assert g.exact[0][1] == Q23(Fraction(-1, 2))
    assert g.values[0, 1] == -0.5


def test_infinity_edge_default():
    sym = parse_symbol("gens a b; edge a b: inf;")
    g = gram_matrix(sym)
    assert g.exact[0][1] == Q23(-1)
    sig = signature(g)
    assert (sig.negatives, sig.positives, sig.zeros) == (0, 1, 1)


def test_b2_offdiagonal_is_minus_sqrt2_over_2():
    g = gram_matrix(canonical_symbol(IsoType("B", 2)))
    assert g.exact[0][1] == Q23(0, Fraction(-1, 2))


def test_bad_c_values():
    sym = parse_symbol("gens a b; edge a b: inf;")
    with pytest.raises(GramError):
        gram_matrix(sym, {("a", "b"): Fraction(-1, 2)})
    with pytest.raises(GramError):
        gram_matrix(parse_symbol("gens a b; edge a b: 3;"), {("a", "b"): -2})


def test_c_below_minus_one_is_indefinite():
    sym = parse_symbol("gens a b; edge a b: inf;")
    sig = signature(gram_matrix(sym, {("a", "b"): Fraction(-3, 2)}))
    assert (sig.negatives, sig.positives, sig.zeros) == (1, 1, 0)


@pytest.mark.parametrize(
    "t",
    [IsoType("A", n) for n in range(1, 9)]
    + [IsoType("B", n) for n in range(2, 9)]
    + [IsoType("D", n) for n in range(4, 9)]
    + [IsoType("E", n) for n in (6, 7, 8)]
    + [IsoType("F", 4), IsoType("G", 2), IsoType("H", 3), IsoType("H", 4), IsoType("I", 2, 7)],
    ids=lambda t: t.name,
)
def test_finite_positive_definite(t):
    sym = canonical_symbol(t)
    sig = signature(gram_matrix(sym))
    assert (sig.negatives, sig.positives, sig.zeros) == (0, t.rank, 0)


@pytest.mark.parametrize(
    "t",
    [IsoType("A~", n) for n in range(2, 9)]
    + [IsoType("B~", n) for n in range(3, 9)]
    + [IsoType("C~", n) for n in range(2, 9)]
    + [IsoType("D~", n) for n in range(4, 9)]
    + [IsoType("E~", n) for n in (6, 7, 8)]
    + [IsoType("F~", 4), IsoType("G~", 2), IsoType("A~", 1)],
    ids=lambda t: t.name,
)
def test_affine_corank_one(t):
    sym = canonical_symbol(t)
    sig = signature(gram_matrix(sym))
    assert (sig.negatives, sig.zeros) == (0, 1)
    assert sig.positives == t.rank


def test_signature_permutation_invariant(sec63):
    rng = random.Random(7)
    base = signature(gram_matrix(sec63))
    gens = list(sec63.generators)
    for _ in range(10):
        rng.shuffle(gens)
        permuted = CoxeterSymbol(tuple(gens), dict(sec63.edges))
        sig = signature(gram_matrix(permuted))
        assert (sig.negatives, sig.positives, sig.zeros) == (
            base.negatives,
            base.positives,
            base.zeros,
        )


def test_exact_and_numeric_agree_via_internal_check(sec61, sec62, sec63):
    # signature() raises when the numeric counts disagree with the exact ones
    for sym in (sec61, sec62, sec63):
        signature(gram_matrix(sym))


def test_section_signatures(sec61, sec62, sec63):
    for sym, n in ((sec61, 4), (sec62, 5), (sec63, 6)):
        sig = signature(gram_matrix(sym))
        assert (sig.negatives, sig.positives, sig.zeros) == (1, n, 0)
        assert is_hyperbolic(sym, n=n)


def test_is_hyperbolic_rejects_finite():
    assert not is_hyperbolic(canonical_symbol(IsoType("A", 3)), n=2)
    assert not is_hyperbolic(canonical_symbol(IsoType("A", 3)), n=3)


def test_tolerance_must_be_positive(sec61):
    with pytest.raises(GramError):
        signature(gram_matrix(sec61), tol=0)


def test_cofinite_simplex_sections(sec61, sec62, sec63):
    rep = is_cofinite_simplex(sec61)
    assert rep.is_simplex and rep.dimension == 4
    assert len(rep.ideal_vertices) == 3
    assert all(len(v) == 4 for v in rep.ideal_vertices)
    assert not rep.cocompact
    assert is_cofinite_simplex(sec62).is_simplex
    assert is_cofinite_simplex(sec63).is_simplex


def test_cofinite_simplex_triangle(tri237):
    rep = is_cofinite_simplex(tri237)
    assert rep.is_simplex
    assert rep.ideal_vertices == ()
    assert rep.cocompact


def test_cofinite_simplex_rejects_finite():
    rep = is_cofinite_simplex(canonical_symbol(IsoType("A", 4)))
    assert not rep.is_simplex
    assert any("finite" in f for f in rep.failures)


def test_cofinite_simplex_rejects_bad_face():
    # a 4-node symbol whose 2-subset is already infinite
    sym = parse_symbol("gens a b c d; edge a b: inf; edge b c: 3; edge c d: 3;")
    rep = is_cofinite_simplex(sym)
    assert not rep.is_simplex


def test_float_only_path_for_label_five():
    g = gram_matrix(canonical_symbol(IsoType("H", 3)))
    assert g.exact is None
    sig = signature(g)
    assert (sig.negatives, sig.positives, sig.zeros) == (0, 3, 0)
