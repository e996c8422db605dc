from pathlib import Path

import pytest

from hypcox.symbol import parse_symbol

FIXTURES = Path(__file__).parent / "fixtures"


def load_symbol(name: str):
    return parse_symbol((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def sec61():
    return load_symbol("sec61.cox")


@pytest.fixture(scope="session")
def sec62():
    return load_symbol("sec62.cox")


@pytest.fixture(scope="session")
def sec63():
    return load_symbol("sec63.cox")


@pytest.fixture(scope="session")
def tri237():
    return load_symbol("tri237.cox")


@pytest.fixture(scope="session")
def tri246():
    return load_symbol("tri246.cox")


@pytest.fixture(scope="session")
def b3sym():
    return load_symbol("b3.cox")


def triangle_symbol(p: int, q: int, r: int):
    """Symbol of the (p, q, r) triangle group."""
    edges = []
    for pair, m in ((("a", "b"), p), (("b", "c"), q), (("a", "c"), r)):
        if m >= 3:
            edges.append(f"edge {pair[0]} {pair[1]}: {m};")
    return parse_symbol("gens a b c;\n" + "\n".join(edges))
