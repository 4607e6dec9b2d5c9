from fractions import Fraction

import pytest

from ptamc.dsl import parse_formula
from ptamc.errors import InvariantViolationError, NotSingleClockError, OracleCapError
from ptamc.intervals import INF, Interval
from ptamc.model import Pta
from ptamc.regions import (Region, enumerate_regions, oracle_check_ptctl, oracle_sat_map,
                           region_interval, region_of, successor)


# ==================== REGIONES ====================

@pytest.mark.parametrize("caps, count", [([3], 8), ([100], 202), ([1, 1], 18)])
def test_region_counts(caps, count):
    assert len(enumerate_regions(caps)) == count


def test_region_of():
    assert region_of([Fraction(5, 2)], [3]) == Region((2,), (frozenset(), frozenset({0})))
    assert region_of([2], [3]) == Region((2,), (frozenset({0}),))
    assert region_of([7], [3]) == Region((4,), (frozenset(),))


def test_successor_chain():
    point = Region((2,), (frozenset({0}),))
    inside = successor(point, [3])
    assert inside == Region((2,), (frozenset(), frozenset({0})))
    edge = successor(inside, [3])
    assert edge == Region((3,), (frozenset({0}),))
    beyond = successor(edge, [3])
    assert beyond == Region((4,), (frozenset(),))
    assert successor(beyond, [3]) is None
    assert region_interval(beyond, 3) == Interval.open(3, INF)
    assert region_interval(inside, 3) == Interval.open(2, 3)


# ==================== ORÁCULO ====================

@pytest.mark.parametrize("text, location, value, expected", [
    ('P{>0}[ F[<=9] "error" ]', "init", 0, True),
    ('P{>0}[ F[<=4] "error" ]', "init", 0, False),
    ('P{>0}[ F[<=0] "init" ]', "init", 0, True),
    ('P{>=1}[ F "error" ]', "init", 0, True),
    ('P{<=0}[ F "error" ]', "init", 0, False),
    ('P{<0.1}[ F[<=6] "error" ]', "init", 0, False),
    ('P{>=0.1}[ F[<=6] "error" ]', "init", 0, False),
    ('P{>0}[ F[<=0] "error" ]', "wait", 7, False),
    ('P{>0}[ F[<=1] "error" ]', "wait", 7, True),
    ('P{>0}[ F[<=4] "error" ]', "init", 2, False),
    ('P{>0}[ F[<=9] "error" ]', "init", 2, True),
])
def test_sample_verdicts(fig1, text, location, value, expected):
    assert oracle_check_ptctl(fig1, parse_formula(text), (location, Fraction(value))) is expected


def test_rational_query_values(rampa):
    f = parse_formula('P{>0}[ F[<=1] "goal" ]')
    assert not oracle_check_ptctl(rampa, f, ("a", Fraction(7, 2)))
    assert oracle_check_ptctl(rampa, f, ("a", Fraction(4)))


def test_ramp_sat_map(rampa):
    sat = oracle_sat_map(rampa, parse_formula('P{>0}[ F[<=1] "goal" ]'))
    assert str(sat["a"]) == "[4;5]"
    assert str(sat["b"]) == "[0;1]"


def test_two_clock_model(dos_relojes):
    pta = dos_relojes
    start = ("intento", [Fraction(0), Fraction(0)])
    assert oracle_check_ptctl(pta, parse_formula('P{>0}[ F "hecho" ]'), start)
    assert not oracle_check_ptctl(pta, parse_formula('P{>=1}[ F "hecho" ]'), start)
    with pytest.raises(NotSingleClockError):
        oracle_sat_map(pta, parse_formula('P{>0}[ F "hecho" ]'))


def test_oracle_limits(fig1):
    f = parse_formula('P{>0}[ F[<=9] "error" ]')
    with pytest.raises(OracleCapError):
        oracle_check_ptctl(fig1, f, ("init", Fraction(0)), cap=50)
    with pytest.raises(InvariantViolationError):
        oracle_check_ptctl(fig1, f, ("init", Fraction(3)))
    with pytest.raises(OracleCapError):
        oracle_check_ptctl(Pta("tres", ("l",), "l", ("x", "y", "z")), f, ("l", Fraction(0)))
