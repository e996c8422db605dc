import random
from fractions import Fraction

import pytest

from hypcox.action import (
    ActionError,
    PermutationAction,
    avoids,
    block_systems,
    blocks_action,
    certify,
    check_divisibility,
    emit_action,
    is_orientable,
    is_primitive,
    is_torsion_free,
    is_transitive,
    orbits,
    orientable_orbits,
    parse_action,
    tensor,
    tensor_orbits,
    verify_action,
)
from hypcox.classify import IsoType
from hypcox.euler import SymbolicVolume
from hypcox.symbol import parse_symbol
from hypcox.torsion import enumerate_group, inventory, _generator_perms

from conftest import triangle_symbol

A2 = parse_symbol("gens x1 x2; edge x1 x2: 3;")
NAT = "action nat on 3 for gamma;\nx1: (1 2);\nx2: (2 3);"


def regular_action(sym, isotype):
    """Right-multiplication action of a finite type on its own elements."""
    import numpy as np

    gens = _generator_perms(isotype)
    E, index = enumerate_group(gens)
    perms = {}
    for name, g in zip(sym.generators, gens):
        garr = np.array(g, dtype=E.dtype)
        perms[name] = tuple(index[garr[E[i]].tobytes()] for i in range(E.shape[0]))
    return PermutationAction(sym, f"reg{isotype.name}", E.shape[0], perms)


def test_parse_action_valid():
    act = parse_action(NAT, A2)
    assert act.degree == 3
    assert act.perms["x1"] == (1, 0, 2)
    assert act.perms["x2"] == (0, 2, 1)
    assert verify_action(act) == []


def test_parse_action_errors():
    with pytest.raises(ActionError):  # cycle longer than a transposition
        parse_action("action a on 3 for g;\nx1: (1 2 3);\nx2: id;", A2)
    with pytest.raises(ActionError):  # missing generator line
        parse_action("action a on 3 for g;\nx1: (1 2);", A2)
    with pytest.raises(ActionError):  # out of range
        parse_action("action a on 3 for g;\nx1: (1 4);\nx2: id;", A2)
    with pytest.raises(ActionError):  # repeated point
        parse_action("action a on 4 for g;\nx1: (1 2)(2 3);\nx2: id;", A2)
    with pytest.raises(ActionError):  # unknown generator
        parse_action("action a on 3 for g;\nx9: (1 2);\nx2: id;", A2)
    with pytest.raises(ActionError):  # bad header
        parse_action("action a 3;\nx1: id;\nx2: id;", A2)


def test_verify_action_catches_relator_violation():
    sym = parse_symbol("gens x1 x2; edge x1 x2: 3;")
    act = PermutationAction(sym, "bad", 2, {"x1": (1, 0), "x2": (1, 0)})
    # (x1 x2)^3 = identity holds, but with label 4 it would too; build a real violation
    sym4 = parse_symbol("gens x1 x2; edge x1 x2: 4;")
    bad = PermutationAction(sym4, "bad", 3, {"x1": (1, 0, 2), "x2": (0, 2, 1)})
    violations = verify_action(bad)
    assert violations and violations[0].kind == "relator"
    assert verify_action(act) == []


def test_emit_roundtrip():
    act = parse_action(NAT, A2)
    text = emit_action(act)
    again = parse_action(text, A2)
    assert again.perms == act.perms
    assert emit_action(again) == text


def test_orbits_and_transitivity():
    act = parse_action(NAT, A2)
    assert orbits(act).transitive
    two = parse_action(
        "action two on 6 for g;\nx1: (1 2)(4 5);\nx2: (2 3)(5 6);", A2
    )
    dec = orbits(two)
    assert len(dec.orbits) == 2
    assert not is_transitive(two)


def test_avoids():
    act = parse_action(NAT, A2)
    assert not avoids(act, ["x1"])  # fixes point 3
    assert avoids(act, ["x1", "x2"])  # 3-cycle


def test_regular_action_is_torsion_free():
    sym = parse_symbol("gens a b c; edge a b: 3; edge b c: 4;")
    reg = regular_action(sym, IsoType("B", 3))
    assert verify_action(reg) == []
    assert is_transitive(reg)
    ok, report = is_torsion_free(reg, inventory(sym))
    assert ok and all(good for _e, good in report)


def test_natural_action_is_not_torsion_free():
    act = parse_action(NAT, A2)
    ok, report = is_torsion_free(act, inventory(A2))
    assert not ok
    bad = [e.word for e, good in report if not good]
    assert (("x1",) in bad) or (("x2",) in bad)


def test_tensor_sizes_and_lcm_bound():
    a1 = parse_action("action u1 on 2 for g;\nx1: (1 2);\nx2: (1 2);", A2)
    a2 = parse_action(NAT, A2)
    t = tensor(a1, a2)
    assert t.degree == 6  # coprime degrees force the full product
    assert verify_action(t) == []
    for orb in tensor_orbits(a1, a2):
        assert orb.degree % 6 == 0 and orb.degree <= 6


def test_tensor_with_trivial_factor_is_isomorphic_copy():
    triv = PermutationAction(A2, "triv", 1, {"x1": (0,), "x2": (0,)})
    a2 = parse_action(NAT, A2)
    t = tensor(a2, triv)
    assert t.degree == a2.degree
    assert t.perms == a2.perms


def test_tensor_avoidance_biconditional_random():
    rng = random.Random(99)
    sym = A2
    inv = inventory(sym)
    words = [e.word for e in inv.entries]
    for _ in range(100):
        a1 = _random_action(rng, sym, rng.choice([2, 4, 6]))
        a2 = _random_action(rng, sym, rng.choice([2, 4, 6]))
        # the full product avoids a class iff at least one factor does
        for w in words:
            full_avoids = all(avoids(orb, w) for orb in tensor_orbits(a1, a2))
            assert full_avoids == (avoids(a1, w) or avoids(a2, w))
        # one avoiding factor protects every single orbit as well
        for orb in tensor_orbits(a1, a2):
            for w in words:
                if avoids(a1, w) or avoids(a2, w):
                    assert avoids(orb, w)


def _random_action(rng, sym, degree):
    """Random valid action built by multiplying two random transitive-ish tries."""
    # rejection sampling over involution assignments until relators hold
    while True:
        perms = {}
        for g in sym.generators:
            pts = list(range(degree))
            rng.shuffle(pts)
            p = list(range(degree))
            for i in range(0, degree - 1, 2):
                a, b = pts[i], pts[i + 1]
                if rng.random() < 0.8:
                    p[a], p[b] = b, a
            perms[g] = tuple(p)
        act = PermutationAction(sym, "rnd", degree, perms)
        if not verify_action(act):
            return act


def test_orientability_examples():
    swap = PermutationAction(A2, "swap", 2, {"x1": (1, 0), "x2": (1, 0)})
    assert is_orientable(swap)
    fix = parse_action(NAT, A2)
    assert not is_orientable(fix)  # x1 fixes point 3


def test_orientability_tensor_inheritance():
    rng = random.Random(5)
    for _ in range(50):
        a1 = _random_action(rng, A2, 4)
        a2 = _random_action(rng, A2, 6)
        if is_orientable(a1):
            for orb in tensor_orbits(a1, a2):
                assert is_orientable(orb)


def test_orientable_orbits_per_orbit():
    two = parse_action("action two on 4 for g;\nx1: (1 2)(3 4);\nx2: (1 2);", A2)
    per = orientable_orbits(two)
    verdicts = {orbit: good for orbit, good in per}
    assert verdicts[(0, 1)] is True
    assert verdicts[(2, 3)] is False


def test_block_systems():
    sym = parse_symbol("gens a b; edge a b: 3;")
    reg = regular_action(sym, IsoType("A", 2))  # regular S3, degree 6
    systems = block_systems(reg)
    assert systems  # proper systems exist (cosets of nontrivial subgroups)
    sizes = sorted({s.block_size for s in systems})
    assert sizes == [2, 3]
    nat = parse_action(NAT, A2)
    assert is_primitive(nat)
    with pytest.raises(ActionError):
        block_systems(parse_action("action i on 2 for g;\nx1: id;\nx2: id;", A2))


def test_blocks_action_is_valid():
    sym = parse_symbol("gens a b; edge a b: 3;")
    reg = regular_action(sym, IsoType("A", 2))
    system = block_systems(reg)[0]
    induced = blocks_action(reg, system)
    assert verify_action(induced) == []
    assert induced.degree == 6 // system.block_size


def test_imprimitive_2x3_product():
    # product action on 2 x 3 points: blocks of both sizes appear
    a1 = parse_action("action u1 on 2 for g;\nx1: (1 2);\nx2: (1 2);", A2)
    a2 = parse_action(NAT, A2)
    t = tensor(a1, a2)
    sizes = sorted({s.block_size for s in block_systems(t)})
    assert sizes == [2, 3]


def test_check_divisibility_trivial_subgroup():
    a1 = parse_action("action u1 on 2 for g;\nx1: (1 2);\nx2: (1 2);", A2)
    a2 = parse_action(NAT, A2)
    report = check_divisibility(a1, a2, [])
    assert report.preconditions_ok
    assert report.lcm_degrees == 6
    assert report.lcm_divides_all
    assert report.product_divides_all is None


def test_check_divisibility_coprime_forces_product():
    a1 = parse_action(NAT, A2)
    big = regular_action(parse_symbol("gens a b; edge a b: 3;"), IsoType("A", 2))
    # degree 3 and degree... use degrees 3 and 2: orbit forced to 6
    a2 = parse_action("action u1 on 2 for g;\nx1: (1 2);\nx2: (1 2);", A2)
    report = check_divisibility(a1, a2, [])
    assert report.orbit_sizes == (6,)


def test_check_divisibility_with_fixed_point_free_subgroup():
    sym = parse_symbol("gens a b; edge a b: 3;")
    reg = regular_action(sym, IsoType("A", 2))
    # one fixed point in the 1-point trivial action, free on the regular one
    triv = PermutationAction(sym, "triv", 1, {"a": (0,), "b": (0,)})
    report = check_divisibility(triv, reg, [("a", "b")])
    assert report.preconditions_ok
    assert report.subgroup_order == 3
    assert report.product_divides_all


def test_check_divisibility_reports_failed_preconditions():
    a2 = parse_action(NAT, A2)
    report = check_divisibility(a2, a2, [("x1",)])
    assert not report.preconditions_ok
    assert report.reasons


def test_certify_b3_regular_invalid_but_torsion_free(b3sym):
    reg = regular_action(b3sym, IsoType("B", 3))
    cert = certify(b3sym, reg)
    assert not cert.valid
    checks = dict((name, ok) for name, ok, _ in cert.checks)
    assert not checks["hyperbolic"]
    assert checks["torsion_free"]
    assert cert.lines()[0] == "valid=false"


def test_certify_dimension_mismatch_is_unsupported(tri246):
    act = PermutationAction(
        tri246, "d", 2, {g: (1, 0) for g in tri246.generators}
    )
    cert = certify(tri246, act, dim=5)
    checks = dict((name, ok) for name, ok, _ in cert.checks)
    assert not checks["cofinite_simplex"]
    assert "unsupported" in dict(((n, w) for n, _ok, w in cert.checks))["cofinite_simplex"]
