from __future__ import annotations

import pytest

from linres.parsing import ParseError, parse_map, parse_polynomial, parse_problem
from linres.polycore import RingSpec, format_polynomial
from linres.presets import PRESETS, builtin_map, load_preset


def test_simple_problem():
    prob = parse_problem("ring x1..x2; ideal I = x1^2 - x2;")
    I = prob.ideal()
    assert prob.ring == RingSpec(2)
    assert [format_polynomial(g) for g in I.gens] == ["x1^2 - x2"]


def test_full_grammar():
    text = """
    # comment
    ring x1..x3, t1..t2;
    ideal A = 1/2*x1*t1 - (x2 + x3)^2, -3*x1;
    ideal B = x1;
    order lex tx;
    transform x3 -> x1 + x3, t2 -> t1 + t2;
    """
    prob = parse_problem(text)
    assert prob.ring == RingSpec(3, 2)
    assert list(prob.ideals) == ["A", "B"]
    assert prob.order.kind == "lex" and prob.order.precedence == "tx"
    assert prob.transform == [("x3", "x1 + x3"), ("t2", "t1 + t2")]
    assert prob.ideal("B").gens[0].lc == 1


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_round_trip(name):
    prob = load_preset(name)
    text = prob.to_text()
    again = parse_problem(text)
    assert again.to_text() == text
    assert [g for g in again.ideal().gens] == [g for g in prob.ideal().gens]


def test_round_trip_with_transform():
    text = "ring x1..x2, t1..t2;\nideal I = x1*t2 - x2*t1;\norder degrevlex tx;\ntransform t2 -> t1 + t2;\n"
    assert parse_problem(text).to_text() == text


def test_terai_listing():
    gens = [format_polynomial(g) for g in load_preset("terai-J").ideal().gens]
    assert gens == [
        "x1*x2*x3", "x1*x2*x4", "x1*x3*x5", "x1*x4*x6", "x1*x5*x6",
        "x2*x3*x6", "x2*x4*x5", "x2*x5*x6", "x3*x4*x5", "x3*x4*x6",
    ]


def test_conca_presets_same_ideal():
    a = {format_polynomial(g) for g in load_preset("conca-J1").ideal().gens}
    b = {format_polynomial(g) for g in load_preset("conca-J1-printed").ideal().gens}
    assert a == b and len(a) == 10


@pytest.mark.parametrize(
    "text, message",
    [
        ("ring x1..x2; ideal I = x3;", "unknown variable"),
        ("ring x1..x2; ideal I = x1/0;", "zero denominator"),
        ("ring x1..x2; ideal I = x1/x2;", "rational constant"),
        ("ring x1..x2; ideal I = x1 +;", "unexpected"),
        ("ideal I = x1;", "ring declaration"),
        ("ring x1..x2; ideal I = x1 $ x2;", "unexpected character"),
        ("ring x2..x3; ideal I = x2;", "x1..xn"),
        ("ring x1..x2; frobnicate;", "unknown statement"),
        ("ring x1..x2; ideal I = x1; ideal I = x2;", "declared twice"),
        ("ring x1..x2; order grlex;", "unknown order"),
    ],
)
def test_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_problem(text)


def test_error_positions():
    with pytest.raises(ParseError) as info:
        parse_problem("ring x1..x2;\nideal I = x1 + y;")
    assert info.value.line == 2 and info.value.col == 16


def test_map_files():
    assert builtin_map("g32") == [("x4", "x1 + x4"), ("x6", "x3 + x6")]
    assert builtin_map("g33")[-1] == ("t8", "t7 + t8")
    assert parse_map("# c\nx1 -> x1 + x2;\n\n") == [("x1", "x1 + x2")]
    with pytest.raises(ParseError):
        parse_map("x1 = x2")
    with pytest.raises(KeyError):
        builtin_map("g99")
    with pytest.raises(KeyError):
        load_preset("nope")


def test_polynomial_parser_precedence():
    ring = RingSpec(2)
    assert parse_polynomial("-x1^2*3 + 2", ring) == parse_polynomial("2 - 3*x1^2", ring)
    assert parse_polynomial("(x1 - x2)^2", ring) == parse_polynomial("x1^2 - 2*x1*x2 + x2^2", ring)
