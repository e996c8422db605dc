import pytest

from hypcox.symbol import (
    INFINITY,
    SymbolError,
    emit_symbol,
    induced_subsymbol,
    make_symbol,
    parse_symbol,
)


def test_parse_chain():
    sym = parse_symbol("gens a b c; edge a b:3; edge b c:3;")
    assert sym.generators == ("a", "b", "c")
    assert sym.label("a", "b") == 3
    assert sym.label("a", "c") == 2


def test_unmentioned_pairs_default_to_two():
    sym = parse_symbol("gens a b;")
    assert sym.label("a", "b") == 2
    assert sym.edges == {}


def test_parse_inf_edge_and_comments():
    sym = parse_symbol("# heading\ngens a b; # trailing\nedge a b: inf;\n")
    assert sym.label("a", "b") == INFINITY


def test_parse_multiline_statement():
    sym = parse_symbol("gens a\n  b;\nedge a\n b : 5;")
    assert sym.label("a", "b") == 5


@pytest.mark.parametrize(
    "src",
    [
        "gens a a;",
        "gens a; edge a a: 3;",
        "gens a b; edge a b: 2;",
        "gens a b; edge a b: x;",
        "gens a b; edge a c: 3;",
        "gens a b; edge a b: 3; edge b a: 4;",
        "gens a b; edge a b: 3",  # missing semicolon
        "gens a b; wobble a b;",
    ],
)
def test_parse_errors(src):
    with pytest.raises(SymbolError):
        parse_symbol(src)


def test_duplicate_edge_same_label_ok():
    sym = parse_symbol("gens a b; edge a b: 4; edge b a: 4;")
    assert sym.label("a", "b") == 4


def test_emit_roundtrip_byte_stable():
    src = "gens x2 x1 q; edge q x2: inf; edge x1 x2 : 7;"
    sym = parse_symbol(src)
    text = emit_symbol(sym)
    again = parse_symbol(text)
    assert again == sym
    assert emit_symbol(again) == text
    assert text == "gens x2 x1 q;\nedge q x2: inf;\nedge x1 x2: 7;\n"


def test_induced_subsymbol():
    sym = parse_symbol("gens a b c; edge a b:3; edge b c:3;")
    sub = induced_subsymbol(sym, ["a", "c"])
    assert sub.generators == ("a", "c")
    assert sub.edges == {}
    empty = induced_subsymbol(sym, [])
    assert empty.rank == 0
    with pytest.raises(SymbolError):
        induced_subsymbol(sym, ["z"])


def test_sec61_shape(sec61):
    assert sec61.rank == 5
    assert sec61.label("x4", "x5") == 4
    centre = [g for g in sec61.generators if len(sec61.neighbours(g)) == 4]
    assert centre == ["x5"]
    sub = induced_subsymbol(sec61, ["x1", "x2", "x3", "x5"])
    labels = {m for m in sub.edges.values()}
    assert labels == {3}
    assert len(sub.neighbours("x5")) == 3


def test_components():
    sym = make_symbol("abcd", [("a", "b", 3)])
    assert sym.components() == [("a", "b"), ("c",), ("d",)]
