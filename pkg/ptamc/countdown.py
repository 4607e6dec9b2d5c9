"""
Juegos de cuenta atrás
----------------------

Resolución de juegos de cuenta atrás y sus traducciones a TMDPs discretos, a PTAs de un
reloj (fórmula puntual) y a PTAs de dos relojes (fórmula de alcanzabilidad sin tiempo),
que sirven como generadores de casos de prueba para los demás motores.

Funcionalidades principales:
    - solve_countdown: Ganador desde la configuración (s, c)
    - game_to_tmdp: TMDP con distribución uniforme por (estado, duración)
    - game_to_1cpta: Construcción con dos locaciones por estado y ¬P<1(F=c a)
    - game_to_2cpta: Reloj adicional y locación absorbente con ¬P<1(F a)
"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import ModelValidationError
from .formula import Atom, Not, ProbUntil, TRUE, Timing
from .model import (ClockAtom, ClockConstraint, CountdownGame, DiscreteTmdp, Distribution,
                    ProbEdge, Pta, validate_game)

logger = logging.getLogger(__name__)

PLAYER1 = "player1"
PLAYER2 = "player2"


def _check(game: CountdownGame) -> None:
    problems = validate_game(game)
    if problems:
        raise ModelValidationError("El juego de cuenta atrás no es válido", problems)


def countdown_table(game: CountdownGame, c: int) -> Dict[Tuple[str, int], bool]:
    """Win(s, r) para r = 0..c: memo de la inducción hacia atrás."""
    _check(game)
    moves = {s: game.moves(s) for s in game.states}
    win: Dict[Tuple[str, int], bool] = {}
    for r in range(c + 1):
        for s in game.states:
            if r == 0:
                win[(s, r)] = True
                continue
            win[(s, r)] = any(0 < d <= r and all(win[(t, r - d)] for t in targets)
                              for d, targets in moves[s].items())
    return win


def solve_countdown(game: CountdownGame, state: str, count: int) -> str:
    """Ganador desde (state, count): el jugador 1 gana si el contador llega exactamente a 0."""
    if state not in game.states:
        raise ModelValidationError(f"Estado desconocido: {state}")
    table = countdown_table(game, count)
    return PLAYER1 if table[(state, count)] else PLAYER2


def _padded_moves(game: CountdownGame, count: int) -> Dict[str, Dict[int, List[str]]]:
    moves = {}
    for s in game.states:
        options = game.moves(s)
        if not options:
            # duración inutilizable dentro del presupuesto
            options = {count + 1: [s]}
        moves[s] = options
    return moves


def game_to_tmdp(game: CountdownGame, state: str, count: int) -> DiscreteTmdp:
    """TMDP con una transición por (estado, duración), distribución uniforme y etiqueta "t"."""
    _check(game)
    moves = _padded_moves(game, count)
    transitions = {s: [(d, {t: Fraction(1, len(targets)) for t in targets})
                       for d, targets in options.items()]
                   for s, options in moves.items()}
    labels = {s: {"t"} for s in game.states}
    return DiscreteTmdp.from_keys(list(game.states), state, transitions, labels)


def _l1(s: str) -> str:
    return f"l1_{s}"


def _l2(s: str) -> str:
    return f"l2_{s}"


def _equals(clock: str, value: int) -> ClockConstraint:
    return ClockConstraint.of(ClockAtom(clock, ">=", value), ClockAtom(clock, "<=", value))


def game_to_1cpta(game: CountdownGame, state: str, count: int):
    """
    PTA de un reloj con dos locaciones por estado.

    l¹ (inv x<=0, etiqueta "a") pasa a l² en el instante; desde l² cada duración d es una
    arista x=d que reinicia x y reparte la masa uniformemente entre los l¹ destino.

    Returns:
        (Pta, fórmula ¬P<1(F=count a))
    """
    _check(game)
    moves = _padded_moves(game, count)
    locations, invariants, labels, edges = [], {}, {}, []
    reset = frozenset({"x"})
    for s in game.states:
        locations.extend([_l1(s), _l2(s)])
        invariants[_l1(s)] = ClockConstraint.of(ClockAtom("x", "<=", 0))
        labels[_l1(s)] = frozenset({"a"})
        edges.append(ProbEdge(_l1(s), _equals("x", 0), Distribution.dirac((reset, _l2(s)))))
    for s in game.states:
        for d, targets in moves[s].items():
            dist = Distribution.uniform([(reset, _l1(t)) for t in targets])
            edges.append(ProbEdge(_l2(s), _equals("x", d), dist))
    pta = Pta("cuenta_atras_1c", tuple(locations), _l1(state), ("x",), invariants, tuple(edges), labels)
    formula = Not(ProbUntil("<", Fraction(1), TRUE, Atom("a"), Timing("=", count)))
    logger.debug(f"Juego traducido a 1C-PTA con {len(locations)} locaciones")
    return pta, formula


def game_to_2cpta(game: CountdownGame, state: str, count: int):
    """
    PTA de dos relojes: se añade y (nunca reiniciado) y la locación absorbente l* con
    etiqueta "a", alcanzable desde cada l¹ cuando y=count.

    Returns:
        (Pta, fórmula ¬P<1(F a))
    """
    base, _ = game_to_1cpta(game, state, count)
    star = "l_star"
    edges = list(base.edges)
    for loc in base.locations:
        if loc.startswith("l1_"):
            edges.append(ProbEdge(loc, _equals("y", count), Distribution.dirac((frozenset(), star))))
    edges.append(ProbEdge(star, ClockConstraint.true(), Distribution.dirac((frozenset(), star))))
    pta = Pta("cuenta_atras_2c", base.locations + (star,), base.initial, ("x", "y"),
              dict(base.invariants), tuple(edges), {star: frozenset({"a"})})
    formula = Not(ProbUntil("<", Fraction(1), TRUE, Atom("a")))
    return pta, formula
