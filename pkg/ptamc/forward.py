"""
Alcanzabilidad hacia delante en PTAs de un reloj
------------------------------------------------

Operador post, MDP de alcanzabilidad hacia delante FR[P], su restricción 1st[P] sobre
M[P], la comprobación del isomorfismo entre ambos y las probabilidades exactas de
alcanzar una proposición.

Clases:
    - FrState: Par (locación, intervalo)
    - IsomorphismReport: Resultado de check_isomorphic_fr_first

Funcionalidades principales:
    - timesucc, post, build_fr_mdp
    - first_int, build_first_mdp, check_isomorphic_fr_first
    - fr_reach_prob
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .abstraction import AbstractState, basic_intervals, boundary_list, build_pctl_mdp
from .errors import PtamcError
from .intervals import INF, Interval
from .mdp import reach_prob
from .model import Pta, UntimedMdp, constraint_to_interval, ensure_1c_gates

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrState:
    location: str
    interval: Interval

    def __str__(self):
        return f"({self.location}, {self.interval})"


@dataclass
class IsomorphismReport:
    """
    Atributos:
        isomorphic: True si f(l, I) = (l, 1stInt(I)) es un isomorfismo
        bijection: FrState → AbstractState
        witness: Descripción del primer fallo encontrado (vacía si no hay)
    """

    isomorphic: bool
    bijection: Dict[FrState, AbstractState] = field(default_factory=dict)
    witness: str = ""


# ==================== POST ====================

def timesucc(interval: Interval, pta: Pta, location: str) -> Optional[Interval]:
    """⟨b;∞) ∩ ⟦inv(l)⟧ con b y su apertura tomados del extremo inferior del intervalo."""
    inv = constraint_to_interval(pta.inv(location))
    if inv is None:
        return None
    ray = Interval.make(interval.lo, interval.lo_closed, INF, False)
    return None if ray is None else ray.intersect(inv)


def post(pta: Pta, state: FrState, edge, resets, target: str) -> Optional[FrState]:
    """(l', timesucc((⟦g⟧ ∩ I)[X:=0], l')), o None si la guarda no corta al intervalo."""
    guard = constraint_to_interval(edge.guard)
    enabled = guard.intersect(state.interval) if guard is not None else None
    if enabled is None:
        return None
    moved = Interval.point(0) if resets else enabled
    result = timesucc(moved, pta, target)
    return None if result is None else FrState(target, result)


def _fr_distribution(pta: Pta, state: FrState, edge) -> Optional[Dict[FrState, Fraction]]:
    rho: Dict[FrState, Fraction] = {}
    for (resets, target), p in edge.dist.entries:
        successor = post(pta, state, edge, resets, target)
        if successor is None:
            return None
        rho[successor] = rho.get(successor, Fraction(0)) + p
    return rho


def build_fr_mdp(pta: Pta) -> UntimedMdp:
    """FR[P]: menor punto fijo desde (l̄, timesucc([0;0], l̄)) con exploración FIFO."""
    ensure_1c_gates(pta)
    start = timesucc(Interval.point(0), pta, pta.initial)
    initial = FrState(pta.initial, start)
    keys: List[FrState] = [initial]
    seen = {initial}
    choices: Dict[FrState, List[Dict]] = {}
    queue = deque([initial])
    while queue:
        state = queue.popleft()
        dists = []
        for _, edge in pta.edges_from(state.location):
            rho = _fr_distribution(pta, state, edge)
            if rho is None or rho in dists:
                continue
            dists.append(rho)
            for successor in rho:
                if successor not in seen:
                    seen.add(successor)
                    keys.append(successor)
                    queue.append(successor)
        choices[state] = dists
    labels = {s: pta.labels_of(s.location) for s in keys}
    mdp = UntimedMdp.from_keys(keys, initial, choices, labels)
    logger.debug(f"FR[{pta.name}]: {len(mdp)} estados, {mdp.transition_count()} transiciones")
    return mdp


# ==================== 1st[P] ====================

def first_int(interval: Interval, intervals: Sequence[Interval]) -> int:
    """Índice de 1stInt(I): el menor intervalo básico contenido en I."""
    for i, piece in enumerate(intervals):
        if piece.is_subset(interval):
            return i
    raise PtamcError(f"Ningún intervalo básico está contenido en {interval}")


def build_first_mdp(pta: Pta, fr: Optional[UntimedMdp] = None) -> UntimedMdp:
    """
    1st[P]: estados (l, 1stInt(I)) de los estados de FR[P]; por cada arista habilitada en
    (l, I), la transición de M[P] desde (l, 1stInt(I)) con B' = 1stInt(I ∩ ⟦g⟧).
    """
    fr = fr or build_fr_mdp(pta)
    full = build_pctl_mdp(pta).mdp
    intervals = basic_intervals(boundary_list(pta))
    keys: List[AbstractState] = []
    choices: Dict[AbstractState, List[Dict]] = {}
    for state in fr.states:
        source = AbstractState(state.location, first_int(state.interval, intervals))
        if source not in choices:
            keys.append(source)
            choices[source] = []
        for _, edge in pta.edges_from(state.location):
            if _fr_distribution(pta, state, edge) is None:
                continue
            chosen = first_int(constraint_to_interval(edge.guard).intersect(state.interval), intervals)
            nu: Dict[AbstractState, Fraction] = {}
            for (resets, target), p in edge.dist.entries:
                key = AbstractState(target, 0 if resets else chosen)
                nu[key] = nu.get(key, Fraction(0)) + p
            in_full = full.index(source)
            if not any(d.map(lambda t: full.states[t]).as_dict() == nu for d in full.choices[in_full]):
                raise PtamcError(f"La transición de 1st[P] desde {source} no pertenece a M[P]")
            if nu not in choices[source]:
                choices[source].append(nu)
    for nu_list in list(choices.values()):
        for nu in nu_list:
            for target in nu:
                if target not in choices:
                    keys.append(target)
                    choices[target] = []
    initial = AbstractState(pta.initial, 0)
    labels = {s: pta.labels_of(s.location) for s in keys}
    return UntimedMdp.from_keys(keys, initial, choices, labels)


def check_isomorphic_fr_first(pta: Pta, fr: Optional[UntimedMdp] = None,
                              first: Optional[UntimedMdp] = None) -> IsomorphismReport:
    """
    Verifica que f(l, I) = (l, 1stInt(I)) preserva estado inicial, etiquetas y
    transiciones (con sus probabilidades) y es biyectiva.
    """
    fr = fr or build_fr_mdp(pta)
    first = first or build_first_mdp(pta, fr)
    intervals = basic_intervals(boundary_list(pta))
    bijection = {s: AbstractState(s.location, first_int(s.interval, intervals)) for s in fr.states}
    report = IsomorphismReport(False, bijection)

    if len(set(bijection.values())) != len(bijection):
        report.witness = "f no es inyectiva"
        return report
    if set(bijection.values()) != set(first.states):
        report.witness = "f no es sobreyectiva sobre los estados de 1st[P]"
        return report
    if bijection[fr.states[fr.initial]] != first.states[first.initial]:
        report.witness = "f no conserva el estado inicial"
        return report

    for i, state in enumerate(fr.states):
        image = bijection[state]
        j = first.index(image)
        if fr.labels[i] != first.labels[j]:
            report.witness = f"etiquetas distintas en {state}"
            return report
        mapped = [d.map(lambda t: first.index(bijection[fr.states[t]])) for d in fr.choices[i]]
        for d in mapped:
            if d not in first.choices[j]:
                report.witness = f"transición de FR[P] desde {state} sin imagen: {d}"
                return report
        for d in first.choices[j]:
            if d not in mapped:
                report.witness = f"transición de 1st[P] desde {image} sin preimagen: {d}"
                return report

    report.isomorphic = True
    return report


def fr_reach_prob(pta: Pta, atom: str, objective: str = "max", fr: Optional[UntimedMdp] = None) -> Fraction:
    """Probabilidad máxima o mínima de F atom en FR[P], en el estado inicial."""
    fr = fr or build_fr_mdp(pta)
    return reach_prob(fr, fr.labelled(atom), objective)[fr.initial]
