import random
from fractions import Fraction

import pytest

from ptamc.countdown import (PLAYER1, PLAYER2, countdown_table, game_to_1cpta, game_to_2cpta,
                             game_to_tmdp, solve_countdown)
from ptamc.errors import ModelValidationError
from ptamc.games import punctual_reach_as1
from ptamc.generators import random_countdown_game, suite_size
from ptamc.regions import oracle_check_ptctl


@pytest.mark.parametrize("count, winner", [
    (0, PLAYER1),
    (1, PLAYER2),
    (2, PLAYER1),
    (5, PLAYER1),
])
def test_sample_game_winners(juego, count, winner):
    assert solve_countdown(juego, "s", count) == winner


def test_table_contents(juego):
    table = countdown_table(juego, 3)
    assert table[("t", 1)]
    assert not table[("s", 1)]
    assert all(table[(s, 0)] for s in juego.states)


def test_unknown_state(juego):
    with pytest.raises(ModelValidationError):
        solve_countdown(juego, "z", 2)


def test_tmdp_translation(juego):
    tmdp = game_to_tmdp(juego, "s", 4)
    s = tmdp.index("s")
    assert tmdp.initial == s
    assert tmdp.labelled("t") == tmdp.all_states()
    durations = sorted(d for d, _ in tmdp.transitions[s])
    assert durations == [2, 3]
    three = [dist for d, dist in tmdp.transitions[s] if d == 3][0]
    assert three.prob(tmdp.index("u")) == Fraction(1, 2)


def test_one_clock_translation_shape(juego):
    pta, formula = game_to_1cpta(juego, "s", 2)
    assert pta.initial == "l1_s"
    assert len(pta.locations) == 6
    assert pta.clocks == ("x",)
    assert formula.sub.timing.op == "="
    assert formula.sub.timing.bound == 2


@pytest.mark.parametrize("count", [0, 1, 2, 5])
def test_one_clock_translation_agrees_with_game(juego, count):
    pta, formula = game_to_1cpta(juego, "s", count)
    verdict = oracle_check_ptctl(pta, formula, ("l1_s", Fraction(0)))
    assert verdict == (solve_countdown(juego, "s", count) == PLAYER1)


@pytest.mark.parametrize("count", [1, 5])
def test_two_clock_translation_agrees_with_game(juego, count):
    pta, formula = game_to_2cpta(juego, "s", count)
    assert pta.clocks == ("x", "y")
    assert "l_star" in pta.locations
    verdict = oracle_check_ptctl(pta, formula, ("l1_s", [Fraction(0), Fraction(0)]))
    assert verdict == (solve_countdown(juego, "s", count) == PLAYER1)


def test_tmdp_translation_matches_solver():
    rng = random.Random(5)
    for _ in range(suite_size(40, 400)):
        game = random_countdown_game(rng)
        state = rng.choice(game.states)
        count = rng.randint(0, 8)
        tmdp = game_to_tmdp(game, state, count)
        expected = solve_countdown(game, state, count) == PLAYER1
        assert punctual_reach_as1(tmdp, count, tmdp.labelled("t")) == expected


def test_pta_translations_match_solver():
    rng = random.Random(8)
    for _ in range(suite_size(6, 60)):
        game = random_countdown_game(rng)
        state = rng.choice(game.states)
        count = rng.randint(0, 8)
        expected = solve_countdown(game, state, count) == PLAYER1
        one_clock, formula = game_to_1cpta(game, state, count)
        assert oracle_check_ptctl(one_clock, formula, (one_clock.initial, Fraction(0))) == expected, (game, state, count)
        two_clock, formula = game_to_2cpta(game, state, count)
        start = [Fraction(0), Fraction(0)]
        assert oracle_check_ptctl(two_clock, formula, (two_clock.initial, start)) == expected, (game, state, count)
