"""
Generadores aleatorios con semilla
----------------------------------

Modelos y fórmulas pequeños para las suites de propiedades: PTAs de un reloj válidos,
estructuralmente no-Zeno y sin bloqueo, MDPs, TMDPs no-Zeno, juegos de cuenta atrás y
fórmulas de cada sublógica. Todos reciben un random.Random para que las suites sean
reproducibles.

Construcción de los PTAs:
    - Invariantes cerrados hacia abajo (x<=k o x<k con k >= 2), así que toda locación
      admite x = 0.
    - Todas las guardas exigen x >= 1 (o x > j), y las ramas sin reinicio solo van a
      locaciones posteriores: todo ciclo reinicia el reloj y deja pasar una unidad.
    - Cada locación tiene una arista de escape habilitada al final de su invariante cuyas
      ramas reinician el reloj.

Variables reconocidas:
    - PTAMC_SUITE_SCALE: "full" para los tamaños completos de las suites
"""

import os
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .formula import TRUE, And, Atom, Not, ProbUntil, Timing
from .model import (ClockAtom, ClockConstraint, CountdownGame, DiscreteTmdp, Distribution,
                    ProbEdge, Pta, UntimedMdp)

ATOMS = ("a", "b")


def suite_size(small: int, full: int) -> int:
    """Tamaño de una suite según PTAMC_SUITE_SCALE."""
    return full if os.getenv("PTAMC_SUITE_SCALE", "").strip().lower() == "full" else small


def random_weights(rng: random.Random, count: int) -> List[Fraction]:
    raw = [rng.randint(1, 3) for _ in range(count)]
    total = sum(raw)
    return [Fraction(w, total) for w in raw]


# ==================== PTAs ====================

def _random_invariant(rng: random.Random, clock: str, max_constant: int) -> ClockConstraint:
    k = rng.randint(2, max(2, max_constant))
    return ClockConstraint.of(ClockAtom(clock, rng.choice(["<=", "<"]), k))


def _random_guard(rng: random.Random, clock: str, max_constant: int) -> ClockConstraint:
    lower = rng.randint(1, max_constant)
    strict = lower >= 2 and rng.random() < 0.4
    atoms = [ClockAtom(clock, ">", lower - 1) if strict else ClockAtom(clock, ">=", lower)]
    if rng.random() < 0.4 and lower < max_constant:
        atoms.append(ClockAtom(clock, rng.choice(["<=", "<"]), rng.randint(lower + 1, max_constant)))
    return ClockConstraint.of(*atoms)


def _escape_guard(invariant: ClockConstraint, clock: str) -> ClockConstraint:
    """Guarda habilitada en upper(inv): x >= k para x<=k, x > k-1 para x<k."""
    atom = invariant.atoms[0]
    if atom.op == "<=":
        return ClockConstraint.of(ClockAtom(clock, ">=", atom.const))
    return ClockConstraint.of(ClockAtom(clock, ">", atom.const - 1))


def random_1c_pta(rng: random.Random, max_locations: int = 4, max_constant: int = 5,
                  atoms: Sequence[str] = ATOMS, name: str = "aleatorio") -> Pta:
    """PTA de un reloj válido, estructuralmente no-Zeno y con invariantes sin bloqueo."""
    clock = "x"
    n = rng.randint(1, max_locations)
    locations = tuple(f"l{i}" for i in range(n))
    invariants = {l: _random_invariant(rng, clock, max_constant) for l in locations}
    labels = {l: frozenset(a for a in atoms if rng.random() < 0.4) for l in locations}
    edges: List[ProbEdge] = []
    for i, source in enumerate(locations):
        escape_targets = rng.sample(locations, rng.randint(1, min(2, n)))
        weights = random_weights(rng, len(escape_targets))
        edges.append(ProbEdge(source, _escape_guard(invariants[source], clock),
                              Distribution.from_pairs(((frozenset([clock]), t), w)
                                                      for t, w in zip(escape_targets, weights))))
        for _ in range(rng.randint(0, 2)):
            branches = []
            for _ in range(rng.randint(1, 2)):
                later = locations[i + 1:]
                if later and rng.random() < 0.5:
                    branches.append((frozenset(), rng.choice(later)))
                else:
                    branches.append((frozenset([clock]), rng.choice(locations)))
            weights = random_weights(rng, len(branches))
            edges.append(ProbEdge(source, _random_guard(rng, clock, max_constant),
                                  Distribution.from_pairs(zip(branches, weights))))
    return Pta(name, locations, locations[0], (clock,), invariants, tuple(edges), labels)


# ==================== MDPs, TMDPs Y JUEGOS ====================

def random_mdp(rng: random.Random, max_states: int = 8, atoms: Sequence[str] = ATOMS) -> UntimedMdp:
    n = rng.randint(1, max_states)
    keys = [f"s{i}" for i in range(n)]
    choices: Dict[str, List[Dict[str, Fraction]]] = {}
    for k in keys:
        dists = []
        for _ in range(rng.randint(1, 3)):
            targets = rng.sample(keys, rng.randint(1, min(3, n)))
            dists.append(dict(zip(targets, random_weights(rng, len(targets)))))
        choices[k] = dists
    labels = {k: [a for a in atoms if rng.random() < 0.3] for k in keys}
    return UntimedMdp.from_keys(keys, keys[0], choices, labels)


def random_tmdp(rng: random.Random, max_states: int = 5, max_duration: int = 4,
                max_moves: int = 2, atoms: Sequence[str] = ATOMS) -> DiscreteTmdp:
    """TMDP con transiciones de duración 0 solo hacia estados posteriores (no-Zeno)."""
    n = rng.randint(1, max_states)
    keys = [f"s{i}" for i in range(n)]
    transitions = {}
    for i, k in enumerate(keys):
        moves = []
        for _ in range(rng.randint(1, max_moves)):
            later = keys[i + 1:]
            duration = rng.randint(0, max_duration) if later else rng.randint(1, max_duration)
            pool = later if duration == 0 else keys
            targets = rng.sample(pool, rng.randint(1, min(2, len(pool))))
            moves.append((duration, dict(zip(targets, random_weights(rng, len(targets))))))
        transitions[k] = moves
    labels = {k: [a for a in atoms if rng.random() < 0.35] for k in keys}
    return DiscreteTmdp.from_keys(keys, keys[0], transitions, labels)


def random_countdown_game(rng: random.Random, max_states: int = 5, max_duration: int = 6) -> CountdownGame:
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    transitions = set()
    for s in states:
        for _ in range(rng.randint(1, 3)):
            transitions.add((s, rng.randint(1, max_duration), rng.choice(states)))
    return CountdownGame(states, tuple(sorted(transitions)))


# ==================== FÓRMULAS ====================

_QUALITATIVE = ((">", 0), (">=", 1), ("<", 1), ("<=", 0))
_THRESHOLDS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def random_formula(rng: random.Random, depth: int = 2, timed: bool = True, qualitative: bool = True,
                   max_bound: int = 6, atoms: Sequence[str] = ATOMS, punctual: bool = False):
    """
    Fórmula aleatoria.

    Args:
        timed: Si los until pueden llevar subíndice temporal
        qualitative: Umbrales en {0, 1} (si no, también 1/4, 1/2, 3/4)
        punctual: Admite subíndices =c
    """
    if depth <= 0 or rng.random() < 0.2:
        return TRUE if rng.random() < 0.15 else Atom(rng.choice(atoms))
    kind = rng.random()
    if kind < 0.15:
        return Not(random_formula(rng, depth - 1, timed, qualitative, max_bound, atoms, punctual))
    if kind < 0.3:
        return And(random_formula(rng, depth - 1, timed, qualitative, max_bound, atoms, punctual),
                   random_formula(rng, depth - 1, timed, qualitative, max_bound, atoms, punctual))
    if qualitative:
        op, threshold = rng.choice(_QUALITATIVE)
        threshold = Fraction(threshold)
    else:
        op, threshold = rng.choice([">", ">=", "<", "<="]), rng.choice(_THRESHOLDS)
    timing: Optional[Timing] = None
    if timed and rng.random() < 0.75:
        ops = ["<=", ">="] + (["="] if punctual else [])
        timing = Timing(rng.choice(ops), rng.randint(0, max_bound))
    left = TRUE if rng.random() < 0.5 else random_formula(rng, depth - 1, timed, qualitative, max_bound, atoms, punctual)
    right = random_formula(rng, depth - 1, timed, qualitative, max_bound, atoms, punctual)
    return ProbUntil(op, threshold, left, right, timing)


def random_valuation(rng: random.Random, max_value: int, denominator: int = 4) -> Fraction:
    return Fraction(rng.randint(0, max_value * denominator), denominator)
