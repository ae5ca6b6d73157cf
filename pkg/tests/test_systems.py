"""Parsing, rendering, and round-trip fidelity of the system text format."""

from __future__ import annotations

import json
import random
import string

import pytest

from chordaltd import (
    GF,
    QQ,
    Polynomial,
    decompose,
    parse_poly,
    parse_system,
    render,
    render_poly,
    render_system,
)
from chordaltd.errors import ParseError
from conftest import ILLUS_TEXT


def test_declared_ordering():
    system = parse_system("vars: x1 < x2\nx2 + x1\n")
    assert system.vars == ("x1", "x2")
    assert len(system.polys) == 1


def test_illustrative_system_parses():
    system = parse_system(ILLUS_TEXT)
    assert system.vars == ("x1", "x2", "x3", "x4")
    assert len(system.polys) == 4
    # implicit multiplication: (x2+2)x3 + x1 expands with a cross term
    x1, x2, x3 = (Polynomial.variable(i) for i in (1, 2, 3))
    assert system.polys[1] == (x2 + Polynomial.constant(2)) * x3 + x1


def test_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse_system("x1 + + x2\n")
    assert err.value.line == 1
    assert err.value.column == 6


def test_unknown_variable_under_declared_ordering():
    with pytest.raises(ParseError) as err:
        parse_system("vars: x1 < x2\nx3 + x1\n")
    assert "x3" in str(err.value)


def test_duplicate_variable_in_ordering():
    with pytest.raises(ParseError):
        parse_system("vars: x1 < x1\nx1\n")


def test_nonstandard_names_need_declaration():
    system = parse_system("vars: a < b\nb + a\n")
    assert system.vars == ("a", "b")
    with pytest.raises(ParseError):
        parse_system("b + a\n")


def test_zero_polynomial_dropped_with_warning():
    with pytest.warns(UserWarning):
        system = parse_system("x1 - x1\nx2\n")
    assert len(system.polys) == 1


def test_comments_and_blank_lines():
    system = parse_system("# heading\n\nx1 + 1  # trailing\n")
    assert len(system.polys) == 1


def test_inferred_ordering_spans_gaps():
    system = parse_system("x5 + x2\n")
    assert system.vars == ("x1", "x2", "x3", "x4", "x5")


def test_rational_coefficients():
    system = parse_system("1/2*x1 + 3/2\n")
    p = system.polys[0]
    assert render_poly(p) == "1/2*x1 + 3/2"


def test_rational_rejected_mod_p():
    with pytest.raises(ParseError):
        parse_system("1/3*x1\n", GF(3))


def test_prime_field_parsing_normalizes():
    system = parse_system("4x1 + 7\n", GF(3))
    assert render_poly(system.polys[0]) == "x1 + 1"


def test_implicit_multiplication_forms():
    assert parse_poly("2x3") == Polynomial.constant(2) * Polynomial.variable(3)
    assert parse_poly("x1 x2") == Polynomial.variable(1) * Polynomial.variable(2)
    assert parse_poly("(x1+1)(x1-1)") == (
        Polynomial.variable(1) ** 2 - Polynomial.constant(1)
    )


def test_adjacent_numbers_are_an_error():
    with pytest.raises(ParseError):
        parse_poly("2 3")


def test_caret_requires_integer_exponent():
    with pytest.raises(ParseError):
        parse_poly("x1^-2")


def test_render_round_trip_simple():
    assert render_poly(parse_poly("x2 + x1")) == "x2 + x1"


def test_render_canonical_order():
    p = parse_poly("x3 - 1 + x2*x4 + x3*x4")
    assert render_poly(p) == "x3*x4 + x2*x4 + x3 - 1"


def test_round_trip_corpus(system_p, system_q, system_illus):
    for system in (system_p, system_q, system_illus):
        assert parse_system(render_system(system), system.field) == system


def test_round_trip_random_systems():
    from chordaltd import random_chordal_system

    for seed in range(25):
        system = random_chordal_system(n=2 + seed % 4, seed=seed)
        assert parse_system(render_system(system)) == system
    for seed in range(25):
        system = random_chordal_system(n=2 + seed % 3, field=GF(5), seed=seed)
        assert parse_system(render_system(system), GF(5)) == system


def test_parser_totality_on_fuzzed_input():
    rng = random.Random(11)
    alphabet = "x123 +-*/^()ab_" + string.whitespace.replace("\x0b", "").replace("\x0c", "")
    for _ in range(500):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        try:
            parse_system(text)
        except ParseError as exc:
            assert exc.line >= 1 and exc.column >= 1


def test_render_triangular_system_json(system_illus):
    tree = decompose(system_illus, pivot="index:3")
    doc = json.loads(render(tree.systems[1]))
    assert doc["T"] == ["x1 + 1", "x2 + 1", "x3 - 1", "x4 + x2"]
    assert doc["U"] == []


def test_render_tree_json_schema(system_illus):
    tree = decompose(system_illus, pivot="index:3")
    doc = json.loads(render(tree))
    assert set(doc) == {"vars", "nodes", "systems", "meta"}
    assert doc["vars"] == ["x1", "x2", "x3", "x4"]
    for node in doc["nodes"]:
        assert set(node) == {"id", "parent", "branch", "level", "P", "Q", "leaf"}
        assert node["branch"] in ("root", "left", "right")
    root = doc["nodes"][0]
    assert root["parent"] is None and root["branch"] == "root"
    assert len(doc["systems"]) == 3


def test_render_empty_tree_single_root_node():
    tree = decompose(parse_system(""))
    doc = json.loads(render(tree))
    assert len(doc["nodes"]) == 1
    assert doc["nodes"][0]["branch"] == "root"
    assert doc["nodes"][0]["leaf"] is True
