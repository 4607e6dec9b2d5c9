"""
Motor de MDPs sin tiempo
------------------------

Análisis cualitativo de until, probabilidades exactas de alcanzabilidad (máxima y
mínima) y verificación PCTL de abajo arriba sobre UntimedMdp.

Las cotas probabilistas se cuantifican universalmente sobre los adversarios:
P>0 ⟺ Pmin>0, P>=1 ⟺ Pmin=1, P<1 ⟺ Pmax<1, P<=0 ⟺ Pmax=0; el resto de umbrales se
resuelve con Pmin (⋈ ∈ {>=, >}) o Pmax (⋈ ∈ {<=, <}).

Dependencias:
    - networkx: Componentes fuertemente conexas y orden topológico del grafo "quizá"
    - fractions: Probabilidades exactas

Funcionalidades principales:
    - qual_exists_until, qual_forall_pos_until, qual_almost_until, qual_exists_almost_until
    - qual_until_step1: variantes de Φ1 U^{>=1} Φ2
    - reach_prob: iteración de políticas exacta por componentes
    - check_pctl: etiquetado de abajo arriba
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

import networkx as nx

from .errors import FormulaClassError
from .formula import And, Atom, Bool, Not, ProbUntil, subformulas
from .linalg import solve_sparse
from .model import StateSet, UntimedMdp

logger = logging.getLogger(__name__)

STEP1_MODES = ("exists_pos", "forall_pos", "all_pos_lt1", "exists_lt1")


# ==================== ANÁLISIS CUALITATIVO ====================

def qual_exists_until(mdp: UntimedMdp, S1: StateSet, S2: StateSet) -> StateSet:
    """Estados con Pmax(S1 U S2) > 0: alcanzabilidad hacia atrás por S1 hasta S2."""
    result = set(S2)
    frontier = list(S2)
    predecessors: Dict[int, set] = {}
    for s, dists in enumerate(mdp.choices):
        for dist in dists:
            for t in dist.support():
                predecessors.setdefault(t, set()).add(s)
    while frontier:
        t = frontier.pop()
        for s in predecessors.get(t, ()):
            if s not in result and s in S1:
                result.add(s)
                frontier.append(s)
    return frozenset(result)


def qual_forall_pos_until(mdp: UntimedMdp, S1: StateSet, S2: StateSet) -> StateSet:
    """Estados con Pmin(S1 U S2) > 0: todo adversario llega con probabilidad positiva."""
    result = set(S2)
    changed = True
    while changed:
        changed = False
        for s in S1:
            if s in result or not mdp.choices[s]:
                continue
            if all(any(t in result for t in dist.support()) for dist in mdp.choices[s]):
                result.add(s)
                changed = True
    return frozenset(result)


def qual_almost_until(mdp: UntimedMdp, S1: StateSet, S2: StateSet) -> StateSet:
    """Estados con Pmin(S1 U S2) = 1 (todo adversario cumple el until casi seguro)."""
    everything = mdp.all_states()
    prob0e = everything - qual_forall_pos_until(mdp, S1, S2)
    return everything - qual_exists_until(mdp, frozenset(S1) - frozenset(S2), prob0e)


def qual_exists_almost_until(mdp: UntimedMdp, S1: StateSet, S2: StateSet) -> StateSet:
    """Estados con Pmax(S1 U S2) = 1: punto fijo anidado clásico."""
    outer = set(mdp.all_states())
    while True:
        inner = set(S2)
        changed = True
        while changed:
            changed = False
            for s in S1:
                if s in inner or s not in outer:
                    continue
                for dist in mdp.choices[s]:
                    support = dist.support()
                    if all(t in outer for t in support) and any(t in inner for t in support):
                        inner.add(s)
                        changed = True
                        break
        if inner == outer:
            return frozenset(inner)
        outer = inner


def qual_until_step1(mdp: UntimedMdp, S1: StateSet, S2: StateSet, mode: str) -> StateSet:
    """
    Variantes de Φ1 U^{>=1} Φ2 (Φ1 en el paso 0 y Φ1 U Φ2 desde el paso 1).

    Modos:
        exists_pos: Pmax > 0
        forall_pos: Pmin > 0
        all_pos_lt1: Pmax < 1 (la cota P<1 universal)
        exists_lt1: Pmin < 1
    """
    if mode not in STEP1_MODES:
        raise ValueError(f"Modo desconocido: {mode}")
    everything = mdp.all_states()
    if mode == "exists_pos":
        inner = qual_exists_until(mdp, S1, S2)
        return frozenset(s for s in S1 if any(any(t in inner for t in d.support()) for d in mdp.choices[s]))
    if mode == "forall_pos":
        inner = qual_forall_pos_until(mdp, S1, S2)
        return frozenset(s for s in S1 if mdp.choices[s]
                         and all(any(t in inner for t in d.support()) for d in mdp.choices[s]))
    if mode == "all_pos_lt1":
        inner = qual_exists_almost_until(mdp, S1, S2)
        sure = frozenset(s for s in S1 if any(all(t in inner for t in d.support()) for d in mdp.choices[s]))
        return everything - sure
    inner = qual_almost_until(mdp, S1, S2)
    sure = frozenset(s for s in S1 if mdp.choices[s]
                     and all(all(t in inner for t in d.support()) for d in mdp.choices[s]))
    return everything - sure


# ==================== PROBABILIDADES EXACTAS ====================

def reach_prob(mdp: UntimedMdp, target: StateSet, objective: str = "max",
               through: Optional[StateSet] = None) -> List[Fraction]:
    """
    Probabilidades óptimas exactas de (through U target).

    1. Precomputación cualitativa de los estados con valor 0 y 1.
    2. Componentes fuertemente conexas de los estados restantes en orden topológico
       inverso; las triviales se resuelven con un paso de Bellman y las demás con
       iteración de políticas y eliminación gaussiana exacta.

    Args:
        mdp: MDP sin tiempo
        target: Estados objetivo
        objective: "max" o "min"
        through: Estados por los que se puede pasar (todos si es None)
    """
    if objective not in ("max", "min"):
        raise ValueError(f"Objetivo desconocido: {objective}")
    everything = mdp.all_states()
    S1 = everything if through is None else frozenset(through)
    target = frozenset(target)
    if objective == "max":
        positive = qual_exists_until(mdp, S1, target)
        certain = qual_exists_almost_until(mdp, S1, target)
    else:
        positive = qual_forall_pos_until(mdp, S1, target)
        certain = qual_almost_until(mdp, S1, target)

    values: Dict[int, Fraction] = {s: Fraction(0) for s in everything - positive}
    values.update({s: Fraction(1) for s in certain})
    maybe = sorted(positive - certain)

    graph = nx.DiGraph()
    graph.add_nodes_from(maybe)
    maybe_set = set(maybe)
    for s in maybe:
        for dist in mdp.choices[s]:
            graph.add_edges_from((s, t) for t in dist.support() if t in maybe_set)

    condensed = nx.condensation(graph)
    for component in reversed(list(nx.topological_sort(condensed))):
        members = sorted(condensed.nodes[component]["members"])
        if len(members) == 1 and not graph.has_edge(members[0], members[0]):
            s = members[0]
            candidates = [_expectation(dist, values) for dist in mdp.choices[s]]
            values[s] = max(candidates) if objective == "max" else min(candidates)
        else:
            values.update(_policy_iteration(mdp, members, values, objective))

    logger.debug(f"reach_prob {objective}: {len(maybe)} estados resueltos numéricamente")
    return [values[s] for s in range(len(mdp))]


def _expectation(dist, values: Mapping[int, Fraction]) -> Fraction:
    return sum((p * values[t] for t, p in dist.entries), Fraction(0))


def _initial_policy(mdp: UntimedMdp, members: List[int], objective: str) -> Dict[int, int]:
    """Política inicial propia: para max, la elección que acerca a la salida del componente."""
    if objective == "min":
        return {s: 0 for s in members}
    inside = set(members)
    policy: Dict[int, int] = {}
    layer = set()
    for s in members:
        for k, dist in enumerate(mdp.choices[s]):
            if any(t not in inside for t in dist.support()):
                policy[s] = k
                layer.add(s)
                break
    done = set(layer)
    while len(done) < len(members):
        added = set()
        for s in members:
            if s in done:
                continue
            for k, dist in enumerate(mdp.choices[s]):
                if any(t in done for t in dist.support()):
                    policy[s] = k
                    added.add(s)
                    break
        if not added:
            raise ValueError("Componente sin salida en la iteración de políticas")
        done |= added
    return policy


def _evaluate(mdp: UntimedMdp, members: List[int], policy: Dict[int, int],
              known: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    inside = set(members)
    rows, rhs = {}, {}
    for s in members:
        row = {s: Fraction(1)}
        constant = Fraction(0)
        for t, p in mdp.choices[s][policy[s]].entries:
            if t in inside:
                row[t] = row.get(t, Fraction(0)) - p
            else:
                constant += p * known[t]
        rows[s], rhs[s] = row, constant
    return solve_sparse(rows, rhs)


def _policy_iteration(mdp: UntimedMdp, members: List[int], known: Dict[int, Fraction],
                      objective: str) -> Dict[int, Fraction]:
    policy = _initial_policy(mdp, members, objective)
    better = (lambda a, b: a > b) if objective == "max" else (lambda a, b: a < b)
    while True:
        local = _evaluate(mdp, members, policy, known)
        lookup = dict(known)
        lookup.update(local)
        improved = False
        for s in members:
            best_k, best_q = policy[s], local[s]
            for k, dist in enumerate(mdp.choices[s]):
                q = _expectation(dist, lookup)
                if better(q, best_q):
                    best_k, best_q = k, q
            if best_k != policy[s]:
                policy[s] = best_k
                improved = True
        if not improved:
            return local


# ==================== PCTL ====================

def until_goal(S1: StateSet, S2: StateSet, instants: Optional[StateSet]) -> StateSet:
    """
    Estados testigo del until continuo: Φ2 en un instante puntual, o Φ1 ∧ Φ2 en
    estados que representan posiciones interiores de una espera.
    """
    if instants is None:
        return frozenset(S2)
    return frozenset(s for s in S2 if s in instants or s in S1)


def threshold_until(mdp: UntimedMdp, op: str, zeta: Fraction, S1: StateSet, goal: StateSet) -> StateSet:
    """Estados que cumplen P⋈ζ(S1 U goal) para todo adversario."""
    everything = mdp.all_states()
    zeta = Fraction(zeta)
    if (op == ">=" and zeta == 0) or (op == "<=" and zeta == 1):
        return everything
    if (op == ">" and zeta == 1) or (op == "<" and zeta == 0):
        return frozenset()
    if op == ">" and zeta == 0:
        return qual_forall_pos_until(mdp, S1, goal)
    if op == ">=" and zeta == 1:
        return qual_almost_until(mdp, S1, goal)
    if op == "<" and zeta == 1:
        return everything - qual_exists_almost_until(mdp, S1, goal)
    if op == "<=" and zeta == 0:
        return everything - qual_exists_until(mdp, S1, goal)

    objective = "min" if op in (">=", ">") else "max"
    values = reach_prob(mdp, goal, objective, through=S1)
    return frozenset(s for s, v in enumerate(values) if _compare(v, op, zeta))


def _compare(value, op: str, bound) -> bool:
    if op == "<":
        return value < bound
    if op == "<=":
        return value <= bound
    if op == ">":
        return value > bound
    return value >= bound


def check_pctl(mdp: UntimedMdp, f, instants: Optional[StateSet] = None,
               known: Optional[Mapping] = None) -> StateSet:
    """
    Etiquetado PCTL de abajo arriba.

    Args:
        mdp: MDP sin tiempo
        f: Fórmula sin subíndices temporales (salvo las subfórmulas ya resueltas en known)
        instants: Estados puntuales; los demás representan posiciones interiores de una
            espera y solo son testigo de un until si también cumplen Φ1
        known: Conjuntos de satisfacción ya calculados para algunas subfórmulas

    Raises:
        FormulaClassError: Si aparece un operador temporizado sin resolver
    """
    return pctl_sat_sets(mdp, f, instants, known)[f]


def pctl_sat_sets(mdp: UntimedMdp, f, instants: Optional[StateSet] = None,
                  known: Optional[Mapping] = None) -> Dict:
    sat: Dict = dict(known or {})
    everything = mdp.all_states()
    for node in subformulas(f):
        if node in sat:
            continue
        if isinstance(node, Bool):
            sat[node] = everything if node.value else frozenset()
        elif isinstance(node, Atom):
            sat[node] = mdp.labelled(node.name)
        elif isinstance(node, Not):
            sat[node] = everything - sat[node.sub]
        elif isinstance(node, And):
            sat[node] = sat[node.left] & sat[node.right]
        elif isinstance(node, ProbUntil):
            if node.timing is not None:
                raise FormulaClassError("check_pctl solo admite fórmulas PCTL (sin subíndices temporales)")
            S1 = sat[node.left]
            goal = until_goal(S1, sat[node.right], instants)
            sat[node] = threshold_until(mdp, node.op, node.threshold, S1, goal)
    return sat
