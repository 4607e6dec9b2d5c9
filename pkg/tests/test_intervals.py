from fractions import Fraction

import pytest

from ptamc.intervals import INF, Interval, IntervalSet


def test_interval_text():
    assert str(Interval.point(3)) == "[3;3]"
    assert str(Interval.open(5, INF)) == "(5;∞)"
    assert str(Interval.make(0, True, Fraction(7, 2), False)) == "[0;7/2)"


def test_make_returns_none_for_empty():
    assert Interval.make(3, True, 3, False) is None
    assert Interval.make(4, True, 2, True) is None
    assert Interval.make(0, True, INF, True) == Interval.everything()


def test_constructor_rejects_empty_interval():
    with pytest.raises(ValueError):
        Interval(2, False, 2, True)
    with pytest.raises(ValueError):
        Interval(0, True, INF, True)


def test_contains_respects_open_ends():
    piece = Interval.open(5, 6)
    assert Fraction(27, 5) in piece
    assert 5 not in piece
    assert 6 not in piece
    assert 3 in Interval.point(3)


def test_intersect_and_subset():
    a = Interval.make(0, True, 5, True)
    b = Interval.make(3, False, 8, False)
    assert a.intersect(b) == Interval.make(3, False, 5, True)
    assert Interval.open(1, 3).is_subset(Interval.make(0, True, 3, False))
    assert not Interval.make(1, True, 3, True).is_subset(Interval.make(0, True, 3, False))
    assert Interval.point(5).intersect(Interval.open(5, 6)) is None


def test_sample_is_inside():
    for piece in (Interval.point(2), Interval.open(1, 3), Interval.open(4, INF)):
        assert piece.sample() in piece


def test_union_merges_touching_intervals():
    left = IntervalSet([Interval.make(0, True, 3, False)])
    right = IntervalSet([Interval.make(3, True, 5, True)])
    merged = left.union(right)
    assert len(merged) == 1
    assert str(merged) == "[0;5]"


def test_union_keeps_gap_at_missing_point():
    pieces = IntervalSet([Interval.make(0, True, 3, False), Interval.make(3, False, 5, True)])
    assert len(pieces) == 2
    assert 3 not in pieces


def test_complement_and_difference():
    pieces = IntervalSet([Interval.make(0, True, 3, False), Interval.open(5, INF)])
    assert pieces.complement() == IntervalSet([Interval.make(3, True, 5, True)])
    assert IntervalSet.everything().difference(pieces) == pieces.complement()
    assert IntervalSet.empty().complement() == IntervalSet.everything()
    assert IntervalSet.everything().complement().is_empty()


def test_intersection_and_subset():
    a = IntervalSet([Interval.make(0, True, 4, True), Interval.make(6, True, 9, False)])
    b = IntervalSet([Interval.make(2, False, 7, False)])
    both = a.intersection(b)
    assert both == IntervalSet([Interval.make(2, False, 4, True), Interval.make(6, True, 7, False)])
    assert both.is_subset(a)
    assert both.is_subset(b)
    assert not a.is_subset(b)


def test_covers_and_endpoints():
    pieces = IntervalSet([Interval.make(1, True, 4, False), Interval.open(6, INF)])
    assert pieces.covers(Interval.open(2, 3))
    assert not pieces.covers(Interval.make(3, True, 4, True))
    assert pieces.endpoints() == [1, 4, 6]
    assert str(IntervalSet()) == "∅"
