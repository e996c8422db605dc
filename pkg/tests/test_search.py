import pytest

from hypcox.action import (
    PermutationAction,
    certify,
    is_orientable,
    is_torsion_free,
    is_transitive,
    verify_action,
)
from hypcox.search import SearchConfig, SearchResult, search_torsion_free
from hypcox.symbol import parse_symbol
from hypcox.torsion import inventory

from conftest import triangle_symbol


def quotient_witness_246():
    """Regular action of a (Z2 x S4)-quotient of the (2,4,6) triangle group.

    The three generators map to involutions (z-component, S4-part):
    a -> (0, (13)), b -> (0, (13)(24)), c -> (z, (12)).  The pairwise
    products have exact orders 2, 4, 6 and every inventory word maps to a
    non-identity element, so right multiplication on the 48 group elements
    is a transitive torsion-free action.  Built independently of the search
    as its oracle fixture.
    """
    sym = triangle_symbol(2, 4, 6)

    def s4_mul(p, q):  # left-to-right: apply p then q
        return tuple(q[p[i]] for i in range(4))

    def mul(x, y):
        return ((x[0] + y[0]) % 2, s4_mul(x[1], y[1]))

    ident4 = (0, 1, 2, 3)
    gens = {
        "a": (0, (2, 1, 0, 3)),          # (13)
        "b": (0, (2, 3, 0, 1)),          # (13)(24)
        "c": (1, (1, 0, 2, 3)),          # z * (12)
    }
    elements = [(0, ident4)]
    index = {(0, ident4): 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens.values():
            y = mul(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
    assert len(elements) == 48
    perms = {
        name: tuple(index[mul(x, g)] for x in elements) for name, g in gens.items()
    }
    return PermutationAction(sym, "witness246", 48, perms)


def test_quotient_witness_is_torsion_free_oracle():
    act = quotient_witness_246()
    assert verify_action(act) == []
    assert is_transitive(act)
    ok, _ = is_torsion_free(act, inventory(act.symbol))
    assert ok
    cert = certify(act.symbol, act, dim=2)
    assert cert.valid
    assert cert.chi == -2
    assert str(cert.volume) == "4*pi"


def test_degree_gate_rejects_non_multiples(tri237):
    result = search_torsion_free(tri237, SearchConfig(degree=83))
    assert result.actions == []
    assert result.exhausted
    assert result.nodes == 0


def test_search_finds_regular_action_of_b3(b3sym):
    result = search_torsion_free(b3sym, SearchConfig(degree=48, max_solutions=1))
    assert len(result.actions) == 1
    act = result.actions[0]
    assert verify_action(act) == []
    assert is_transitive(act)
    ok, _ = is_torsion_free(act, inventory(b3sym))
    assert ok
    # the only torsion-free transitive degree-48 action of a 48-element group
    # is regular: every point stabiliser is trivial
    words_fixing = [
        w for w in ([g] for g in b3sym.generators) if not all(
            act.perms[w[0]][i] != i for i in range(48)
        )
    ]
    assert words_fixing == []


def test_search_246_at_degree_48(tri246):
    result = search_torsion_free(tri246, SearchConfig(degree=48, max_solutions=1))
    assert len(result.actions) == 1
    cert = certify(tri246, result.actions[0], dim=2)
    assert cert.valid
    assert cert.chi == -2
    assert str(cert.volume) == "4*pi"


def test_search_orientable_flag(tri246):
    result = search_torsion_free(
        tri246, SearchConfig(degree=48, max_solutions=1, require_orientable=True)
    )
    assert result.actions, "an orientable genus-2 action exists at degree 48"
    act = result.actions[0]
    assert is_orientable(act)
    cert = certify(tri246, act, dim=2)
    assert cert.valid and cert.chi == -2


def test_search_deterministic(tri246):
    cfg = lambda: SearchConfig(degree=24, max_solutions=3)
    r1 = search_torsion_free(tri246, cfg())
    r2 = search_torsion_free(tri246, cfg())
    assert [a.perms for a in r1.actions] == [a.perms for a in r2.actions]
    assert r1.nodes == r2.nodes


def test_search_exhausts_small_impossible_case():
    # the full (2,4,6) group has lcm 24; degree 24 searches close quickly
    sym = triangle_symbol(2, 4, 6)
    result = search_torsion_free(sym, SearchConfig(degree=24, max_solutions=None,
                                                   node_budget=10**6, time_budget=60))
    # whatever is found must be sound
    for act in result.actions:
        assert verify_action(act) == []
        assert is_transitive(act)
        ok, _ = is_torsion_free(act, inventory(sym))
        assert ok


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(degree=0)
    with pytest.raises(ValueError):
        SearchConfig(degree=4, node_budget=0)
