import json
from fractions import Fraction

import pytest

from ptamc.dsl import export_dot, export_json, parse_formula, parse_model, serialize_model
from ptamc.errors import DslSyntaxError, ModelValidationError
from ptamc.formula import (TRUE, And, Atom, FormulaClass, Not, ProbUntil, Timing, classify_formula,
                           format_formula, formula_depth, formula_size, subformulas)
from ptamc.intervals import Interval, IntervalSet
from ptamc.model import ClockAtom, ClockConstraint, CountdownGame, DiscreteTmdp, Pta


# ==================== FÓRMULAS ====================

def test_eventually_with_bound():
    f = parse_formula('P{>0}[ F[<=9] "error" ]')
    assert f == ProbUntil(">", Fraction(0), TRUE, Atom("error"), Timing("<=", 9))


def test_globally_uses_mirrored_comparator():
    f = parse_formula('P{>=1}[ G "safe" ]')
    assert f == ProbUntil("<=", Fraction(0), TRUE, Not(Atom("safe")))
    g = parse_formula('P{<0.25}[ G[>=2] ok ]')
    assert g == ProbUntil(">", Fraction(3, 4), TRUE, Not(Atom("ok")), Timing(">=", 2))


def test_derived_connectives_are_removed():
    assert parse_formula('"a" | "b"') == Not(And(Not(Atom("a")), Not(Atom("b"))))
    assert parse_formula('"a" -> "b"') == Not(And(Atom("a"), Not(Atom("b"))))
    assert parse_formula('!!"a"') == Atom("a")
    assert parse_formula("!true") == parse_formula("false")


def test_until_and_unicode_comparators():
    f = parse_formula('P{≥1/2}[ "a" U[≤3] "b" ]')
    assert f == ProbUntil(">=", Fraction(1, 2), Atom("a"), Atom("b"), Timing("<=", 3))
    assert parse_formula('P{<1}[ a U[=4] b ]').timing == Timing("=", 4)


@pytest.mark.parametrize("text, expected", [
    ('P{>0}[ F "a" ]', FormulaClass.PCTL),
    ('P{>=1/2}[ "a" U "b" ]', FormulaClass.PCTL),
    ('P{>0}[ F[<=3] "a" ]', FormulaClass.PTCTL01_NONPUNCTUAL),
    ('P{<1}[ F[=3] "a" ]', FormulaClass.PTCTL01),
    ('P{>=0.3}[ F[>=2] "a" ]', FormulaClass.PTCTL_NONPUNCTUAL),
    ('P{>=0.3}[ F[=2] "a" ] & P{>0}[ F "b" ]', FormulaClass.PTCTL),
    ('"a" & !"b"', FormulaClass.PCTL),
])
def test_classification(text, expected):
    assert classify_formula(parse_formula(text)) == expected


def test_format_round_trip():
    for text in ('P{>0}[ F[<=9] "error" ]',
                 'P{<1}[ ("a" & !"b") U[>=2] P{>=1}[ F "c" ] ]',
                 'P{<=3/10}[ G "a" ]',
                 'true & false'):
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) == f


def test_formula_measures():
    f = parse_formula('P{<1}[ "a" U[>=2] P{>=1}[ F "c" ] ]')
    assert formula_size(f) == 5
    assert formula_depth(f) == 2
    nodes = list(subformulas(f))
    assert nodes[-1] == f
    assert nodes.index(Atom("c")) < nodes.index(f.right)


@pytest.mark.parametrize("text", [
    'P{>1.5}[ F "a" ]',
    'P{>0}[ F[<3] "a" ]',
    'P{=1}[ F "a" ]',
    'P{>0}[ F "a" ',
])
def test_formula_errors(text):
    with pytest.raises(DslSyntaxError):
        parse_formula(text)


# ==================== MODELOS ====================

def test_sample_pta_structure(fig1):
    assert isinstance(fig1, Pta)
    assert fig1.locations == ("init", "wait", "error")
    assert fig1.initial == "init"
    assert fig1.clocks == ("x",)
    assert len(fig1.edges) == 4
    assert fig1.labels_of("error") == frozenset({"error"})
    assert fig1.edges[3].guard == ClockConstraint.of(ClockAtom("x", ">=", 100), ClockAtom("x", "<=", 100))
    assert fig1.edges[1].dist.prob((frozenset(), "error")) == Fraction(1, 5)


def test_syntax_error_position():
    text = "pta p {\n    clocks: x;\n    location l init { inv: x $ 3; }\n}\n"
    with pytest.raises(DslSyntaxError) as info:
        parse_model(text)
    assert info.value.line == 3


def test_invalid_model_reports_diagnostics():
    text = """
    pta p {
        clocks: x;
        location l init { }
        edge from l guard x >= 1 { 1/2 -> goto l; }
    }
    """
    with pytest.raises(ModelValidationError) as info:
        parse_model(text)
    assert [d.code for d in info.value.diagnostics] == ["distribution-mass"]


def test_tmdp_requires_single_initial_state():
    with pytest.raises(ModelValidationError):
        parse_model("tmdp { state a; trans a -> 1 { a: 1 }; }")


def test_serialize_round_trip(fig1, cadena, juego, rampa):
    for model in (fig1, cadena, juego, rampa):
        assert parse_model(serialize_model(model)) == model


def test_parsed_kinds(cadena, juego):
    assert isinstance(cadena, DiscreteTmdp)
    assert cadena.states == ("s0", "s1", "meta")
    assert cadena.transitions[0][1][0] == 1
    assert isinstance(juego, CountdownGame)
    assert juego.states == ("s", "t", "u")


# ==================== EXPORTACIÓN ====================

def test_json_export(fig1, cadena):
    document = json.loads(export_json(fig1))
    assert document["schema"] == "ptamc/1"
    assert document["kind"] == "pta"
    assert [l["name"] for l in document["locations"]] == ["init", "wait", "error"]
    assert document["edges"][1]["branches"][0]["probability"] == "4/5"
    assert json.loads(export_json(cadena))["kind"] == "tmdp"
    assert export_json({}) == "{}"
    sat = {"a": IntervalSet([Interval.make(4, True, 5, True)])}
    assert json.loads(export_json(sat)) == {"a": ["[4;5]"]}


def test_dot_export_is_deterministic(fig1, juego):
    dot = export_dot(fig1)
    assert dot.startswith('digraph "protocolo" {')
    assert '"init" [shape=doublecircle' in dot
    assert dot == export_dot(fig1)
    assert export_dot(juego).count("->") == len(juego.transitions)
