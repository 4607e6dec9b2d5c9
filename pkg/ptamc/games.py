"""
Juegos sobre TMDPs discretos
----------------------------

Valores de duración óptima α, β, γ, δ de los juegos entre el jugador no determinista
(Pn, el adversario) y el jugador probabilista (Pp, que elige un sucesor del soporte),
until TCTL sobre el grafo con pesos y la verificación PTCTL^{0/1}[<=,>=] de abajo arriba.

Los valores son enteros o ±math.inf. Las recursiones se iteran desde +∞ hasta que dos
iteraciones consecutivas coinciden (como mucho 2|S|+2 rondas).

Dependencias:
    - networkx: Dijkstra, componentes fuertemente conexas y orden topológico

Funcionalidades principales:
    - compute_alpha, compute_beta, compute_gamma, compute_delta
    - tctl_until: E/A Φ1 U∼c Φ2 con ∼ ∈ {<=, >=}
    - check_ptctl01_noneq: etiquetado completo de una fórmula
    - punctual_reach_as1: alcanzar el objetivo exactamente en c con probabilidad 1
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence

import networkx as nx

from .errors import FormulaClassError, ModelValidationError
from .formula import And, Atom, Bool, FormulaClass, Not, ProbUntil, classify_formula, subformulas
from .mdp import (qual_almost_until, qual_exists_almost_until, qual_forall_pos_until,
                  threshold_until)
from .model import Diagnostic, DiscreteTmdp, StateSet, ensure_tmdp_gates

logger = logging.getLogger(__name__)

INF = math.inf
GameValue = float  # entero, +inf o -inf


# ==================== RECURSIONES ====================

def iterate_game(tmdp: DiscreteTmdp, fixed: Dict[int, GameValue], free: Sequence[int],
                 outer: Callable, inner: Callable, floor: StateSet = frozenset()) -> List[GameValue]:
    """
    Itera v(s) = outer_{(d,ν)} (d + inner_{s' ∈ supp ν} v(s')) para los estados libres,
    con los estados fijos a su valor, partiendo de +∞. En los estados de floor el valor
    nunca baja de 0 (el testigo puede tomarse en el instante actual).
    """
    n = len(tmdp)
    values = [INF] * n
    for s, v in fixed.items():
        values[s] = v
    rounds = 2 * n + 2
    for _ in range(rounds):
        updated = list(values)
        for s in free:
            options = [d + inner(values[t] for t in dist.support()) for d, dist in tmdp.transitions[s]]
            updated[s] = outer(options) if options else INF
            if s in floor:
                updated[s] = max(0, updated[s])
        if updated == values:
            return values
        values = updated
    logger.warning("La iteración de valores no se estabilizó en 2|S|+2 rondas")
    return values


def compute_alpha(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """α: duración mínima que Pp asegura para llegar a S2 (Pn maximiza, Pp minimiza)."""
    ensure_tmdp_gates(tmdp)
    fixed = {s: (0 if s in S2 else INF) for s in range(len(tmdp)) if s in S2 or s not in S1}
    free = [s for s in range(len(tmdp)) if s in S1 and s not in S2]
    return iterate_game(tmdp, fixed, free, max, min)


def compute_beta(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """β: duración mínima que Pn asegura para llegar a S2 (Pn minimiza, Pp maximiza)."""
    ensure_tmdp_gates(tmdp)
    fixed = {s: (0 if s in S2 else INF) for s in range(len(tmdp)) if s in S2 or s not in S1}
    free = [s for s in range(len(tmdp)) if s in S1 and s not in S2]
    return iterate_game(tmdp, fixed, free, min, max)


def step_sets(tmdp: DiscreteTmdp, S1: StateSet, base: StateSet, universal: bool) -> StateSet:
    """Estados de S1 desde los que (toda | alguna) transición tiene (algún | todo) sucesor en base."""
    result = set()
    for s in S1:
        moves = tmdp.transitions[s]
        if universal:
            if moves and all(any(t in base for t in dist.support()) for _, dist in moves):
                result.add(s)
        elif any(all(t in base for t in dist.support()) for _, dist in moves):
            result.add(s)
    return frozenset(result)


def compute_gamma(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """
    γ: duración máxima que Pp asegura manteniendo P>0(Φ1 U Φ2).

    -∞ fuera de E = P>0(Φ1 U Φ2); 0 en E \\ E1 con E1 = P>0(Φ1 U^{>=1} Φ2);
    en E1, mínimo sobre transiciones de d + máximo sobre el soporte.
    """
    ensure_tmdp_gates(tmdp)
    mdp = tmdp.untimed()
    E = qual_forall_pos_until(mdp, S1, S2)
    E1 = step_sets(tmdp, S1, E, universal=True)
    fixed = {s: (-INF if s not in E else 0) for s in range(len(tmdp)) if s not in E1}
    return iterate_game(tmdp, fixed, sorted(E1), min, max)


def compute_delta(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """
    δ: duración máxima que Pn asegura manteniendo ¬P<1(Φ1 U Φ2).

    -∞ donde P<1(Φ1 U Φ2); 0 donde además P<1(Φ1 U^{>=1} Φ2); en el resto, máximo
    sobre transiciones de d + mínimo sobre el soporte.
    """
    ensure_tmdp_gates(tmdp)
    mdp = tmdp.untimed()
    A = qual_exists_almost_until(mdp, S1, S2)
    A1 = step_sets(tmdp, S1, A, universal=False)
    fixed = {s: (-INF if s not in A else 0) for s in range(len(tmdp)) if s not in A1}
    return iterate_game(tmdp, fixed, sorted(A1), max, min)


# ==================== TCTL ====================

def _graph(tmdp: DiscreteTmdp, sources: StateSet, targets: StateSet, longest: bool = False) -> nx.DiGraph:
    """Grafo con pesos: arco s → t con la menor (o mayor) duración de las transiciones que lo soportan."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(tmdp)))
    for s in sources:
        for d, dist in tmdp.transitions[s]:
            for t in dist.support():
                if t not in targets:
                    continue
                if not graph.has_edge(s, t) or (graph[s][t]["weight"] < d if longest else graph[s][t]["weight"] > d):
                    graph.add_edge(s, t, weight=d)
    return graph


def _shortest_to(tmdp: DiscreteTmdp, through: StateSet, goal: StateSet) -> Dict[int, GameValue]:
    """Duración mínima hasta goal pasando solo por estados de through."""
    graph = _graph(tmdp, frozenset(through) - frozenset(goal), tmdp.all_states()).reverse(copy=True)
    if not goal:
        return {}
    graph.add_node("fin")
    for g in goal:
        graph.add_edge("fin", g, weight=0)
    lengths = nx.single_source_dijkstra_path_length(graph, "fin")
    return {s: v for s, v in lengths.items() if s != "fin"}


def _exists_until(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> StateSet:
    return frozenset(_shortest_to(tmdp, S1, S2).keys())


def _longest_until(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """Máxima duración de un camino por S1 que termina en S2 (∞ si se puede alargar sin cota)."""
    reach = _exists_until(tmdp, S1, S2)
    core = frozenset(S1) & reach
    graph = _graph(tmdp, core, reach, longest=True)
    sub = graph.subgraph(core).copy()
    condensed = nx.condensation(sub)
    looping = set()
    for node in condensed.nodes:
        members = condensed.nodes[node]["members"]
        if len(members) > 1 or any(sub.has_edge(m, m) for m in members):
            looping |= set(members)
    unbounded = set(looping)
    for m in looping:
        unbounded |= nx.ancestors(sub, m)

    values = [(-INF)] * len(tmdp)
    order = list(nx.topological_sort(condensed))
    for node in reversed(order):
        for s in condensed.nodes[node]["members"]:
            if s in unbounded:
                values[s] = INF
                continue
            best = 0 if s in S2 else -INF
            for _, t, data in graph.out_edges(s, data=True):
                if t in core:
                    best = max(best, data["weight"] + values[t])
                elif t in S2:
                    best = max(best, data["weight"])
            values[s] = best
    for s in reach - core:
        values[s] = 0
    return values


def _all_until_bounded(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """Para A(Φ1 U Φ2): duración máxima hasta el primer estado de S2 (∞ fuera del conjunto)."""
    values: List[GameValue] = [INF] * len(tmdp)
    for s in S2:
        values[s] = 0
    done = set(S2)
    changed = True
    while changed:
        changed = False
        for s in S1:
            if s in done or not tmdp.transitions[s]:
                continue
            if all(t in done for _, dist in tmdp.transitions[s] for t in dist.support()):
                values[s] = max(d + values[t] for d, dist in tmdp.transitions[s] for t in dist.support())
                done.add(s)
                changed = True
    return values


def _all_until_lower(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> List[GameValue]:
    """Para A(Φ1 U>=c Φ2): el menor 'último testigo' que puede forzar un camino."""
    n = len(tmdp)
    S1, S2 = frozenset(S1), frozenset(S2)
    never = set(s for s in range(n) if s not in S1 and s not in S2) | set(s for s in S1 if s not in S2)
    changed = True
    while changed:
        changed = False
        for s in list(never):
            if s not in S1:
                continue
            if not any(t in never for _, dist in tmdp.transitions[s] for t in dist.support()):
                never.discard(s)
                changed = True
    ends = set(s for s in S2 if s not in never and
               (s not in S1 or any(t in never for _, dist in tmdp.transitions[s] for t in dist.support())))
    distances = _shortest_to(tmdp, frozenset(S1) - never, frozenset(ends))
    values: List[GameValue] = []
    for s in range(n):
        if s in never:
            values.append(-INF)
        else:
            values.append(distances.get(s, INF))
    return values


def tctl_until(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet, quant: str, timing) -> StateSet:
    """
    E/A (Φ1 U∼c Φ2) leyendo las ramas probabilistas como no deterministas.

    Args:
        quant: "E" o "A"
        timing: Timing con ∼ ∈ {<=, >=}
    """
    if timing.op not in ("<=", ">="):
        raise FormulaClassError("tctl_until no admite subíndices puntuales")
    if quant not in ("E", "A"):
        raise ValueError(f"Cuantificador desconocido: {quant}")
    c = timing.bound
    S1, S2 = frozenset(S1), frozenset(S2)
    if quant == "E" and timing.op == "<=":
        distances = _shortest_to(tmdp, S1, S2)
        return frozenset(s for s, v in distances.items() if v <= c)
    if quant == "E":
        values = _longest_until(tmdp, S1, S2)
        return frozenset(s for s, v in enumerate(values) if v >= c)
    if timing.op == "<=":
        values = _all_until_bounded(tmdp, S1, S2)
        return frozenset(s for s, v in enumerate(values) if v <= c)
    values = _all_until_lower(tmdp, S1, S2)
    return frozenset(s for s, v in enumerate(values) if v >= c)


# ==================== PTCTL^{0/1}[<=,>=] ====================

def timed_qualitative_until(tmdp: DiscreteTmdp, node: ProbUntil, S1: StateSet, S2: StateSet) -> StateSet:
    """Conjunto de P⋈ζ(Φ1 U∼c Φ2) con ζ ∈ {0,1} y ∼ ∈ {<=, >=}."""
    everything = tmdp.all_states()
    op, zeta, timing = node.op, node.threshold, node.timing
    c = timing.bound
    if (op == ">=" and zeta == 0) or (op == "<=" and zeta == 1):
        return everything
    if (op == ">" and zeta == 1) or (op == "<" and zeta == 0):
        return frozenset()
    if op == "<=":
        return everything - tctl_until(tmdp, S1, S2, "E", timing)
    if op == ">=":
        if timing.op == "<=":
            return tctl_until(tmdp, S1, S2, "A", timing)
        psi = qual_almost_until(tmdp.untimed(), S1, S2)
        return tctl_until(tmdp, S1, psi, "A", timing)
    if op == ">":
        if timing.op == "<=":
            values = compute_alpha(tmdp, S1, S2)
            return frozenset(s for s, v in enumerate(values) if v <= c)
        values = compute_gamma(tmdp, S1, S2)
        return frozenset(s for s, v in enumerate(values) if v >= c)
    if timing.op == "<=":
        values = compute_beta(tmdp, S1, S2)
        return frozenset(s for s, v in enumerate(values) if v > c)
    values = compute_delta(tmdp, S1, S2)
    return frozenset(s for s, v in enumerate(values) if v < c)


def check_ptctl01_noneq(tmdp: DiscreteTmdp, f) -> Dict:
    """
    Etiquetado de abajo arriba de una fórmula PTCTL^{0/1}[<=,>=] sobre un TMDP discreto.

    Returns:
        Diccionario subfórmula → StateSet
    """
    if classify_formula(f) not in (FormulaClass.PCTL, FormulaClass.PTCTL01_NONPUNCTUAL):
        raise FormulaClassError("La fórmula no pertenece a PTCTL^{0/1}[<=,>=]")
    ensure_tmdp_gates(tmdp)
    mdp = tmdp.untimed()
    everything = tmdp.all_states()
    sat: Dict = {}
    for node in subformulas(f):
        if isinstance(node, Bool):
            sat[node] = everything if node.value else frozenset()
        elif isinstance(node, Atom):
            sat[node] = tmdp.labelled(node.name)
        elif isinstance(node, Not):
            sat[node] = everything - sat[node.sub]
        elif isinstance(node, And):
            sat[node] = sat[node.left] & sat[node.right]
        elif node.timing is None:
            sat[node] = threshold_until(mdp, node.op, node.threshold, sat[node.left], sat[node.right])
        else:
            sat[node] = timed_qualitative_until(tmdp, node, sat[node.left], sat[node.right])
    return sat


# ==================== ALCANCE PUNTUAL ====================

def punctual_win_table(tmdp: DiscreteTmdp, c: int, target: StateSet) -> List[List[bool]]:
    """Win[r][s]: existe adversario que llega a target exactamente tras r unidades con probabilidad 1."""
    for s, moves in enumerate(tmdp.transitions):
        if any(d == 0 for d, _ in moves):
            raise ModelValidationError("punctual_reach_as1 requiere duraciones positivas",
                                       [Diagnostic("zero-duration", "transición de duración 0", str(tmdp.states[s]))])
    n = len(tmdp)
    win = [[s in target for s in range(n)]]
    for r in range(1, c + 1):
        row = []
        for s in range(n):
            row.append(any(d <= r and all(win[r - d][t] for t in dist.support())
                           for d, dist in tmdp.transitions[s]))
        win.append(row)
    return win


def punctual_reach_as1(tmdp: DiscreteTmdp, c: int, target: StateSet, state: Optional[int] = None) -> bool:
    """True si desde el estado (inicial por defecto) se llega a target exactamente en c con probabilidad 1."""
    win = punctual_win_table(tmdp, c, frozenset(target))
    return win[c][tmdp.initial if state is None else state]
