"""
Abstracción por intervalos de un PTA de un reloj
------------------------------------------------

Construye el MDP sin tiempo M[P] sobre los intervalos básicos I_B de las constantes del
autómata y verifica PCTL sobre él.

Para la verificación se usa una variante refinada de M[P] con transiciones de espera
explícitas: cada intervalo abierto aparece como copia de llegada (se entra por una
arista) y como copia interior (se entra dejando pasar el tiempo). Así el until continuo
exige Φ1 durante toda la espera, mientras que M[P] se mantiene idéntico a la
definición y es el que usan las comparaciones de alcanzabilidad hacia delante.

Clases:
    - AbstractState: Par (locación, índice de intervalo en I_B)
    - RefinedState: Estado del MDP refinado (punto, llegada o interior)
    - Abstraction: MDP construido junto con las fronteras y los intervalos

Funcionalidades principales:
    - boundary_list, basic_intervals, interval_index
    - abstract_state, build_pctl_mdp, build_refined_mdp, check_pctl_1c
"""

import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import FormulaClassError, InvariantViolationError
from .formula import FormulaClass, classify_formula, subformulas
from .intervals import INF, Interval, IntervalSet
from .mdp import pctl_sat_sets
from .model import (CheckResult, Pta, UntimedMdp, constraint_to_interval, ensure_1c_gates)

logger = logging.getLogger(__name__)

POINT, ARRIVAL, INTERIOR = "p", "a", "d"


@dataclass(frozen=True, order=True)
class AbstractState:
    location: str
    index: int


@dataclass(frozen=True, order=True)
class RefinedState:
    location: str
    index: int
    copy: str


class Abstraction(NamedTuple):
    mdp: UntimedMdp
    bounds: List[int]
    intervals: List[Interval]


# ==================== INTERVALOS BÁSICOS ====================

def boundary_list(pta: Pta) -> List[int]:
    """B = {0} ∪ constantes del PTA, ordenado."""
    return pta.constants()


def basic_intervals(bounds: Sequence[int]) -> List[Interval]:
    """I_B = [b0;b0], (b0;b1), [b1;b1], …, (bk;∞): 2(k+1) intervalos."""
    result = []
    for i, b in enumerate(bounds):
        result.append(Interval.point(b))
        upper = bounds[i + 1] if i + 1 < len(bounds) else INF
        result.append(Interval.open(b, upper))
    return result


def interval_index(bounds: Sequence[int], value) -> int:
    """n(v): índice del intervalo de I_B que contiene v."""
    value = Fraction(value)
    if value < 0:
        raise ValueError(f"Valor de reloj negativo: {value}")
    i = bisect.bisect_right(bounds, value) - 1
    return 2 * i if bounds[i] == value else 2 * i + 1


def _inv_interval(pta: Pta, location: str) -> Optional[Interval]:
    return constraint_to_interval(pta.inv(location))


def _inside(piece: Interval, region: Optional[Interval]) -> bool:
    return region is not None and piece.is_subset(region)


def abstract_state(pta: Pta, location: str, value) -> AbstractState:
    """(l, n(v)); lanza InvariantViolationError si v no cumple inv(l)."""
    bounds = boundary_list(pta)
    inv = _inv_interval(pta, location)
    if inv is None or not inv.contains(Fraction(value)):
        raise InvariantViolationError(f"La valuación {value} viola el invariante {pta.inv(location)} de {location}")
    return AbstractState(location, interval_index(bounds, value))


# ==================== M[P] ====================

def _edge_targets(pta: Pta, edge, piece: Interval, intervals: List[Interval], j: int,
                  target_state) -> Optional[Dict]:
    """Distribución de la arista desde el intervalo j, o None si algún destino viola su invariante."""
    nu: Dict = {}
    for (resets, target), p in edge.dist.entries:
        inv = _inv_interval(pta, target)
        if resets:
            if not _inside(intervals[0], inv):
                return None
            key = target_state(target, 0)
        else:
            if not _inside(piece, inv):
                return None
            key = target_state(target, j)
        nu[key] = nu.get(key, Fraction(0)) + p
    return nu


def build_pctl_mdp(pta: Pta) -> Abstraction:
    """
    MDP M[P]: estados (l, B) con B ⊆ ⟦inv(l)⟧; desde (l, B) se elige B' >= B alcanzable
    sin salir del invariante, con B' ⊆ ⟦g⟧, y la masa con reinicio va a (l', [0;0]) y la
    masa sin reinicio a (l', B').
    """
    ensure_1c_gates(pta)
    bounds = boundary_list(pta)
    intervals = basic_intervals(bounds)
    keys, choices, labels = [], {}, {}
    for loc in pta.locations:
        inv = _inv_interval(pta, loc)
        for i, piece in enumerate(intervals):
            if _inside(piece, inv):
                state = AbstractState(loc, i)
                keys.append(state)
                labels[state] = pta.labels_of(loc)

    for state in keys:
        inv = _inv_interval(pta, state.location)
        dists: List[Dict] = []
        for j in range(state.index, len(intervals)):
            if not _inside(intervals[j], inv):
                break
            for _, edge in pta.edges_from(state.location):
                if not _inside(intervals[j], constraint_to_interval(edge.guard)):
                    continue
                nu = _edge_targets(pta, edge, intervals[j], intervals, j, AbstractState)
                if nu is not None and nu not in dists:
                    dists.append(nu)
        choices[state] = dists

    mdp = UntimedMdp.from_keys(keys, AbstractState(pta.initial, 0), choices, labels)
    logger.debug(f"M[P] de {pta.name}: |B|={len(bounds)}, {len(mdp)} estados, {mdp.transition_count()} transiciones")
    return Abstraction(mdp, bounds, intervals)


# ==================== MDP REFINADO ====================

def build_refined_mdp(pta: Pta) -> Abstraction:
    """
    Variante de M[P] con esperas explícitas entre intervalos consecutivos.

    Estados: (l, i, p) para puntos, (l, i, a) y (l, i, d) para intervalos abiertos.
    Esperas: punto → interior del abierto siguiente, llegada → interior, abierto →
    punto siguiente. Aristas: desde cualquier copia cuyo intervalo cumpla la guarda; la
    masa sin reinicio llega a la copia de llegada del mismo intervalo.
    """
    ensure_1c_gates(pta)
    bounds = boundary_list(pta)
    intervals = basic_intervals(bounds)

    def target_state(location, j):
        return RefinedState(location, j, POINT if intervals[j].is_point else ARRIVAL)

    keys, labels = [], {}
    for loc in pta.locations:
        inv = _inv_interval(pta, loc)
        for i, piece in enumerate(intervals):
            if not _inside(piece, inv):
                continue
            copies = (POINT,) if piece.is_point else (ARRIVAL, INTERIOR)
            for copy in copies:
                state = RefinedState(loc, i, copy)
                keys.append(state)
                labels[state] = pta.labels_of(loc)

    present = set(keys)
    choices: Dict[RefinedState, List[Dict]] = {}
    for state in keys:
        dists: List[Dict] = []
        piece = intervals[state.index]
        if state.copy == POINT:
            delayed = RefinedState(state.location, state.index + 1, INTERIOR)
            if delayed in present:
                dists.append({delayed: Fraction(1)})
        elif state.copy == ARRIVAL:
            dists.append({RefinedState(state.location, state.index, INTERIOR): Fraction(1)})
        if not piece.is_point:
            following = RefinedState(state.location, state.index + 1, POINT)
            if following in present and state.copy == INTERIOR:
                dists.append({following: Fraction(1)})
            elif piece.hi == INF and state.copy == INTERIOR:
                dists.append({state: Fraction(1)})
        for _, edge in pta.edges_from(state.location):
            if not _inside(piece, constraint_to_interval(edge.guard)):
                continue
            nu = _edge_targets(pta, edge, piece, intervals, state.index, target_state)
            if nu is not None and nu not in dists:
                dists.append(nu)
        if not dists:
            logger.warning(f"Estado sin transiciones en el MDP refinado: {state}; se añade un bucle")
            dists.append({state: Fraction(1)})
        choices[state] = dists

    mdp = UntimedMdp.from_keys(keys, RefinedState(pta.initial, 0, POINT), choices, labels)
    logger.debug(f"MDP refinado de {pta.name}: {len(mdp)} estados, {mdp.transition_count()} transiciones")
    return Abstraction(mdp, bounds, intervals)


def instants_of(abstraction: Abstraction) -> frozenset:
    """Estados puntuales y de llegada: testigos del until sin exigir Φ1."""
    mdp = abstraction.mdp
    return frozenset(i for i, s in enumerate(mdp.states) if s.copy != INTERIOR)


def refined_sat_sets(abstraction: Abstraction, f) -> Dict:
    """
    Etiquetado PCTL sobre el MDP refinado.

    Tras cada subfórmula, la copia interior de un intervalo abierto toma el valor de su
    copia de llegada: ambas representan las mismas configuraciones.
    """
    mdp = abstraction.mdp
    instants = instants_of(abstraction)
    twin = {i: mdp.index(RefinedState(s.location, s.index, ARRIVAL))
            for i, s in enumerate(mdp.states) if s.copy == INTERIOR}
    sat: Dict = {}
    for node in subformulas(f):
        computed = pctl_sat_sets(mdp, node, instants, sat)[node]
        sat[node] = frozenset(s for s in mdp.all_states() if twin.get(s, s) in computed)
    return sat


def sat_map_from_states(abstraction: Abstraction, pta: Pta, states) -> Dict[str, IntervalSet]:
    """Locación → unión de intervalos de los estados puntuales y de llegada en states."""
    pieces: Dict[str, List[Interval]] = {loc: [] for loc in pta.locations}
    for i in states:
        s = abstraction.mdp.states[i]
        if s.copy != INTERIOR:
            pieces[s.location].append(abstraction.intervals[s.index])
    return {loc: IntervalSet(parts) for loc, parts in pieces.items()}


def refined_state_of(abstraction: Abstraction, pta: Pta, location: str, value) -> int:
    """Índice del estado refinado que representa la configuración (l, v)."""
    state = abstract_state(pta, location, value)
    copy = POINT if abstraction.intervals[state.index].is_point else ARRIVAL
    return abstraction.mdp.index(RefinedState(location, state.index, copy))


def check_pctl_1c(pta: Pta, f, at: Optional[Tuple[str, Fraction]] = None) -> CheckResult:
    """
    Verificación PCTL de un 1C-PTA: (l, v) cumple Φ si y solo si su estado abstracto
    lo cumple en el MDP de intervalos.
    """
    if classify_formula(f) != FormulaClass.PCTL:
        raise FormulaClassError("check_pctl_1c solo admite fórmulas PCTL")
    abstraction = build_refined_mdp(pta)
    sat = refined_sat_sets(abstraction, f)
    result = CheckResult("interval", sat_map_from_states(abstraction, pta, sat[f]),
                         stats={"states": len(abstraction.mdp), "boundaries": len(abstraction.bounds)})
    if at is not None:
        location, value = at
        result.verdict = refined_state_of(abstraction, pta, location, value) in sat[f]
    return result
