import random
from fractions import Fraction

import pytest

from ptamc.dsl import parse_formula
from ptamc.errors import FormulaClassError, InvariantViolationError
from ptamc.intervals import IntervalSet
from ptamc.formula import subformulas
from ptamc.generators import random_1c_pta, random_formula, random_valuation, suite_size
from ptamc.model import Pta
from ptamc.ptctl1c import (ABOVE, BELOW, EXACT, ExtendedBound, Piece, PiecewiseValue, build_boundaries,
                           check_ptctl01_noneq_1c, interval_bound, meets, ptctl1c_sat_maps,
                           threshold_to_satset)
from ptamc.regions import oracle_check_ptctl, oracle_sat_map, scale_formula, scale_pta


class CheckScenario:
    """Consulta PTCTL sobre un modelo de ejemplo con su veredicto esperado."""

    def __init__(self, scenario_id, description, model, formula, location, value, expected):
        self.id = scenario_id
        self.description = description
        self.model = model
        self.formula = formula
        self.location = location
        self.value = Fraction(value)
        self.expected = expected


SCENARIOS = [
    CheckScenario("ERROR_9", "El error llega antes de 9 con cualquier adversario.",
                  "fig1", 'P{>0}[ F[<=9] "error" ]', "init", 0, True),
    CheckScenario("ERROR_4", "Esperando a (7;8) no hay error antes de 4.",
                  "fig1", 'P{>0}[ F[<=4] "error" ]', "init", 0, False),
    CheckScenario("INIT_NOW", "init se cumple en el instante inicial.",
                  "fig1", 'P{>0}[ F[<=0] "init" ]', "init", 0, True),
    CheckScenario("ERROR_SURE", "Todo adversario acaba en error.",
                  "fig1", 'P{>=1}[ F "error" ]', "init", 0, True),
    CheckScenario("ERROR_NEVER", "Ningún adversario evita el error.",
                  "fig1", 'P{<=0}[ F "error" ]', "init", 0, False),
    CheckScenario("WAIT_NOW", "En wait con x=7 no hay error inmediato.",
                  "fig1", 'P{>0}[ F[<=0] "error" ]', "wait", 7, False),
    CheckScenario("WAIT_1", "En wait con x=7 la arista (7;8) se toma antes de una unidad.",
                  "fig1", 'P{>0}[ F[<=1] "error" ]', "wait", 7, True),
    CheckScenario("LATE_4", "Desde init con x=2 el adversario retrasa el error.",
                  "fig1", 'P{>0}[ F[<=4] "error" ]', "init", 2, False),
    CheckScenario("LATE_9", "Desde init con x=2 el error llega antes de 9.",
                  "fig1", 'P{>0}[ F[<=9] "error" ]', "init", 2, True),
    CheckScenario("RAMP_EARLY", "Con x=7/2 faltan más de una unidad para goal.",
                  "rampa", 'P{>0}[ F[<=1] "goal" ]', "a", Fraction(7, 2), False),
    CheckScenario("RAMP_LATE", "Con x=4 goal llega justo a tiempo.",
                  "rampa", 'P{>0}[ F[<=1] "goal" ]', "a", 4, True),
]


@pytest.fixture
def models(fig1, rampa):
    return {"fig1": fig1, "rampa": rampa}


@pytest.mark.parametrize("scenario", SCENARIOS, ids=[s.id for s in SCENARIOS])
def test_scenario_verdicts(models, scenario):
    pta = models[scenario.model]
    f = parse_formula(scenario.formula)
    at = (scenario.location, scenario.value)
    result = check_ptctl01_noneq_1c(pta, f, at=at)
    assert result.engine == "ptctl1c"
    assert result.verdict is scenario.expected, scenario.description
    assert oracle_check_ptctl(pta, f, at) is scenario.expected


# ==================== COTAS EXTENDIDAS ====================

def test_extended_bound_order():
    assert ExtendedBound(5, BELOW) < ExtendedBound(5) < ExtendedBound(5, ABOVE) < ExtendedBound(6, BELOW)
    assert ExtendedBound(float("inf"), ABOVE).flag == EXACT
    with pytest.raises(ValueError):
        ExtendedBound(1, "casi")


def test_extended_bound_from_ticks():
    assert ExtendedBound.from_ticks(260, 52) == ExtendedBound(5, EXACT)
    assert ExtendedBound.from_ticks(259, 52) == ExtendedBound(5, BELOW)
    assert ExtendedBound.from_ticks(261, 52) == ExtendedBound(5, ABOVE)
    assert str(ExtendedBound(5, ABOVE)) == ">5"


def test_extended_bound_comparisons():
    assert not ExtendedBound(5, ABOVE).le(5)
    assert ExtendedBound(5, BELOW).le(5)
    assert not ExtendedBound(5, BELOW).ge(5)
    assert meets(ExtendedBound(5, ABOVE), ">", 5)
    assert meets(ExtendedBound(5, BELOW), "<", 5)
    assert meets(Fraction(5), ">=", 5)
    assert not meets(Fraction(5), "<", 5)


# ==================== FRONTERAS Y CONJUNTOS ====================

def test_boundaries_of_unbounded_location():
    pta = Pta("vacio", ("l",), "l", ("x",))
    assert build_boundaries(pta, {"l": IntervalSet()}, {"l": IntervalSet()}, 0) == [0, 1]


def test_threshold_crossing_is_exact():
    pw = PiecewiseValue(points={"l": {0: ExtendedBound(8), 8: ExtendedBound(0)}},
                        pieces={"l": [Piece(0, 8, -1, ExtendedBound(8)), Piece(8, float("inf"), 0, ExtendedBound(0))]})
    assert str(threshold_to_satset(pw, "<=", 5)["l"]) == "[3;∞)"
    assert str(threshold_to_satset(pw, ">", 5)["l"]) == "[0;3)"
    late = PiecewiseValue(points={"l": {}}, pieces={"l": [Piece(0, 8, -1, ExtendedBound(8, ABOVE))]})
    # en x = 3 el valor es 5 por encima
    assert str(threshold_to_satset(late, "<=", 5)["l"]) == "(3;8)"
    assert str(threshold_to_satset(late, ">", 5)["l"]) == "(0;3]"


def test_ramp_sat_maps(rampa):
    result = check_ptctl01_noneq_1c(rampa, parse_formula('P{>0}[ F[<=1] "goal" ]'))
    assert str(result.sat_map["a"]) == "[4;5]"
    assert str(result.sat_map["b"]) == "[0;1]"
    assert result.verdict is False
    assert result.stats["intervals"] == 2


def test_reduced_game_size(fig1):
    result = check_ptctl01_noneq_1c(fig1, parse_formula('P{>0}[ F[<=9] "error" ]'))
    # |ℂ| = 8 fronteras, tres posiciones por frontera y locación más el sumidero
    assert 0 < result.stats["reduced_states"] <= 3 * 8 * 3 + 1


def test_rejected_queries(fig1):
    with pytest.raises(FormulaClassError):
        check_ptctl01_noneq_1c(fig1, parse_formula('P{<1}[ F[=2] "error" ]'))
    with pytest.raises(InvariantViolationError):
        check_ptctl01_noneq_1c(fig1, parse_formula('P{>0}[ F "error" ]'), at=("init", Fraction(3)))


# ==================== SUITES ALEATORIAS ====================

def test_engine_matches_region_oracle():
    rng = random.Random(23)
    for _ in range(suite_size(10, 150)):
        pta = random_1c_pta(rng)
        f = random_formula(rng, depth=2, timed=True, qualitative=True)
        sat_maps = ptctl1c_sat_maps(pta, f)
        assert sat_maps[f] == oracle_sat_map(pta, f), str(f)
        for node in subformulas(f):
            assert all(len(s) <= interval_bound(pta, node) for s in sat_maps[node].values()), str(node)
        result = check_ptctl01_noneq_1c(pta, f)
        assert result.verdict is oracle_check_ptctl(pta, f, (pta.initial, Fraction(0))), str(f)
        for _ in range(3):
            location = rng.choice(pta.locations)
            value = random_valuation(rng, 5)
            if not pta.inv(location).interval_on("x").contains(value):
                continue
            expected = oracle_check_ptctl(pta, f, (location, value))
            assert check_ptctl01_noneq_1c(pta, f, at=(location, value)).verdict is expected, (str(f), location, value)


# ==================== ESCALADO ====================

@pytest.mark.parametrize("model, formula, location, value", [
    ("fig1", 'P{>0}[ F[<=9] "error" ]', "init", 2),
    ("rampa", 'P{>0}[ F[<=1] "goal" ]', "a", 4),
])
def test_work_does_not_grow_with_constants(models, model, formula, location, value):
    pta, f = models[model], parse_formula(formula)
    base = check_ptctl01_noneq_1c(pta, f, at=(location, Fraction(value)))
    for q in (10, 1000, 100000):
        scaled = check_ptctl01_noneq_1c(scale_pta(pta, q), scale_formula(f, q), at=(location, Fraction(value * q)))
        assert scaled.verdict is base.verdict
        assert scaled.stats["reduced_states"] == base.stats["reduced_states"]
        assert scaled.stats["local_solves"] <= 2 * base.stats["local_solves"], q
