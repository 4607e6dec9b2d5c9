import random
from fractions import Fraction

from ptamc.abstraction import AbstractState, basic_intervals, boundary_list, build_pctl_mdp
from ptamc.forward import (FrState, build_first_mdp, build_fr_mdp, check_isomorphic_fr_first,
                           first_int, fr_reach_prob, post, timesucc)
from ptamc.generators import ATOMS, random_1c_pta, suite_size
from ptamc.intervals import INF, Interval
from ptamc.mdp import reach_prob
from ptamc.model import ClockAtom, ClockConstraint, Distribution, ProbEdge, Pta


def _coin():
    """Moneda: al llegar x a 1 se reinicia el reloj y se va a ok o a ko con 1/2."""
    reset = frozenset({"x"})
    guard = ClockConstraint.of(ClockAtom("x", ">=", 1), ClockAtom("x", "<=", 1))
    edge = ProbEdge("l0", guard, Distribution.from_pairs([((reset, "ok"), Fraction(1, 2)),
                                                          ((reset, "ko"), Fraction(1, 2))]))
    # ok y ko se quedan donde están, un paso por unidad
    loops = tuple(ProbEdge(l, ClockConstraint.of(ClockAtom("x", ">=", 1)),
                           Distribution.from_pairs([((reset, l), Fraction(1))])) for l in ("ok", "ko"))
    upto_one = ClockConstraint.of(ClockAtom("x", "<=", 1))
    return Pta("moneda", ("l0", "ok", "ko"), "l0", ("x",),
               {"l0": upto_one, "ok": upto_one, "ko": upto_one}, (edge,) + loops,
               {"ok": frozenset({"ok"}), "ko": frozenset({"ko"})})


def test_timesucc(fig1):
    assert timesucc(Interval.open(1, 3), fig1, "wait") == Interval.open(1, 8)
    assert timesucc(Interval.point(0), fig1, "error") == Interval.make(0, True, 100, True)


def test_post(fig1):
    state = FrState("wait", Interval.open(1, 8))
    edge = fig1.edges[1]
    assert post(fig1, state, edge, frozenset({"x"}), "init") == FrState("init", Interval.make(0, True, 3, False))
    assert post(fig1, state, edge, frozenset(), "error") == FrState("error", Interval.make(5, False, 100, True))


def test_forward_mdp_of_sample(fig1):
    fr = build_fr_mdp(fig1)
    assert len(fr) == 5
    assert fr.states[fr.initial] == FrState("init", Interval.make(0, True, 3, False))
    assert FrState("wait", Interval.make(0, True, 8, False)) in fr.states


def test_first_int(fig1):
    intervals = basic_intervals(boundary_list(fig1))
    assert first_int(Interval.open(1, 8), intervals) == 3
    assert first_int(Interval.make(7, False, 100, True), intervals) == 11
    assert first_int(Interval.open(100, INF), intervals) == 15


def test_forward_mdp_isomorphic_to_first(fig1):
    first = build_first_mdp(fig1)
    assert len(first) == 5
    assert first.states[first.initial] == AbstractState("init", 0)
    report = check_isomorphic_fr_first(fig1)
    assert report.isomorphic, report.witness
    assert report.bijection[FrState("error", Interval.make(5, False, 100, True))] == AbstractState("error", 7)


def test_forward_reach_probabilities(fig1):
    assert fr_reach_prob(fig1, "error", "min") == 1
    assert fr_reach_prob(fig1, "error", "max") == 1
    assert fr_reach_prob(_coin(), "ok", "max") == Fraction(1, 2)
    assert fr_reach_prob(_coin(), "ko", "min") == Fraction(1, 2)


def test_forward_matches_interval_mdp_on_random_ptas():
    rng = random.Random(17)
    for _ in range(suite_size(10, 200)):
        pta = random_1c_pta(rng)
        fr = build_fr_mdp(pta)
        abstraction = build_pctl_mdp(pta)
        report = check_isomorphic_fr_first(pta, fr)
        assert report.isomorphic, report.witness
        for atom in ATOMS:
            for objective in ("max", "min"):
                expected = reach_prob(abstraction.mdp, abstraction.mdp.labelled(atom), objective)
                assert fr_reach_prob(pta, atom, objective, fr) == expected[abstraction.mdp.initial], (pta.name, atom)
