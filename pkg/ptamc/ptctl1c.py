"""
PTCTL^{0/1}[<=,>=] sobre PTAs de un reloj
-----------------------------------------

Etiqueta cada subfórmula con un conjunto de intervalos por locación (SatMap). Para un
until temporizado se construye un TMDP discreto reducido sobre las constantes frontera
ℂ con tres posiciones por constante (b⁻, b, b⁺), se resuelve el juego de duraciones
que corresponde al operador y los valores se extienden a los puntos interiores de cada
segmento.

Unidad de tiempo:
    El TMDP reducido cuenta el tiempo en "ticks": una unidad del PTA son `scale` ticks y
    las posiciones b⁺ y b⁻ están a un tick de b. Un valor en ticks se convierte en
    ExtendedBound redondeando al múltiplo de scale más cercano; el signo del resto indica
    si el óptimo se alcanza por encima, exactamente o por debajo de la constante.

Clases:
    - ExtendedBound: Valor k con marca below/exact/above
    - EndpointState: Estado (l, λ) del TMDP reducido
    - ReducedGame: TMDP reducido con sus fronteras y su escala
    - OperatorGame: Juego de duraciones asociado a un operador
    - PiecewiseValue: Valores extendidos a cada locación como funciones a trozos

Funcionalidades principales:
    - build_boundaries, build_game_tmdp, lift_values, threshold_to_satset
    - ptctl1c_sat_maps, check_ptctl01_noneq_1c, interval_bound
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import FormulaClassError, InvariantViolationError
from .formula import (And, Atom, Bool, FormulaClass, Not, ProbUntil, classify_formula,
                      formula_size, subformulas)
from .games import iterate_game, step_sets
from .intervals import INF, Interval, IntervalSet
from .mdp import (qual_almost_until, qual_exists_almost_until, qual_exists_until,
                  qual_forall_pos_until, threshold_until)
from .model import (CheckResult, DiscreteTmdp, Pta, StateSet,
                    constraint_to_interval, ensure_1c_gates)

logger = logging.getLogger(__name__)

SatMap = Dict[str, IntervalSet]

BELOW, EXACT, ABOVE = "below", "exact", "above"
_FLAG_RANK = {BELOW: 0, EXACT: 1, ABOVE: 2}
_FLAG_SIGN = {BELOW: "<", EXACT: "=", ABOVE: ">"}

AT, BEFORE, AFTER = "=", "-", "+"
PHI1, PHI2 = "phi1", "phi2"
SINK = "⊥"


# ==================== COTAS EXTENDIDAS ====================

@functools.total_ordering
@dataclass(frozen=True)
class ExtendedBound:
    """
    Valor óptimo "ε k": k natural o ±∞ y una marca que indica si el óptimo queda
    infinitesimalmente por debajo, justo en k o por encima.

    Orden: (k,below) < (k,exact) < (k,above) < (k+1,below).
    """

    k: float
    flag: str = EXACT

    def __post_init__(self):
        if self.flag not in _FLAG_RANK:
            raise ValueError(f"Marca desconocida: {self.flag}")
        if math.isinf(self.k) and self.flag != EXACT:
            object.__setattr__(self, "flag", EXACT)

    @classmethod
    def from_ticks(cls, ticks, scale: int) -> "ExtendedBound":
        if isinstance(ticks, float) and math.isinf(ticks):
            return cls(ticks)
        ticks = Fraction(ticks)
        k = round(ticks / scale)
        rest = ticks - k * scale
        return cls(k, ABOVE if rest > 0 else BELOW if rest < 0 else EXACT)

    def sort_key(self):
        return (self.k, _FLAG_RANK[self.flag])

    def __lt__(self, other: "ExtendedBound") -> bool:
        return self.sort_key() < other.sort_key()

    def __add__(self, d: int) -> "ExtendedBound":
        return ExtendedBound(self.k + d, self.flag)

    def le(self, c: int) -> bool:
        return self.k < c if self.flag == ABOVE else self.k <= c

    def ge(self, c: int) -> bool:
        return self.k > c if self.flag == BELOW else self.k >= c

    def __str__(self):
        if math.isinf(self.k):
            return "∞" if self.k > 0 else "-∞"
        return f"{_FLAG_SIGN[self.flag]}{int(self.k)}"


Value = Union[ExtendedBound, Fraction]


def meets(value: Value, relation: str, c: int) -> bool:
    """value ⋈ c con la tabla de comparación de las cotas extendidas."""
    if isinstance(value, ExtendedBound):
        if relation == "<=":
            return value.le(c)
        if relation == ">":
            return not value.le(c)
        if relation == ">=":
            return value.ge(c)
        return not value.ge(c)
    if relation == "<=":
        return value <= c
    if relation == ">":
        return value > c
    if relation == ">=":
        return value >= c
    return value < c


# ==================== FRONTERAS Y TMDP REDUCIDO ====================

class EndpointState(NamedTuple):
    """(l, λ) con λ = b_i (AT), b_i⁺ (AFTER) o b_i⁻ (BEFORE)."""

    location: str
    kind: str
    index: int


def _domain(pta: Pta) -> SatMap:
    return {l: IntervalSet([constraint_to_interval(pta.inv(l))]) for l in pta.locations}


def build_boundaries(pta: Pta, sat1: SatMap, sat2: SatMap, c: int) -> List[int]:
    """
    ℂ: 0, las constantes del PTA, los extremos finitos de ambos SatMaps y b+c+1 por
    cada intervalo [b;∞) (de los SatMaps o de los invariantes).
    """
    bounds = {0} | set(pta.constants())
    right_open = []
    for sat in (sat1, sat2, _domain(pta)):
        for intervals in sat.values():
            for interval in intervals:
                bounds.add(interval.lo)
                if interval.hi == INF:
                    right_open.append(interval.lo)
                else:
                    bounds.add(interval.hi)
    for b in right_open:
        bounds.add(b + c + 1)
    return sorted(int(b) for b in bounds)


@dataclass
class ReducedGame:
    """
    TMDP reducido T^r de un until temporizado.

    Atributos:
        tmdp: TMDP con duraciones en ticks y etiquetas phi1/phi2
        bounds: Constantes frontera ℂ ordenadas
        scale: Ticks por unidad de tiempo
        location_names: Locaciones del PTA
    """

    tmdp: DiscreteTmdp
    bounds: List[int]
    scale: int
    location_names: Tuple[str, ...]

    def state(self, location: str, kind: str, index: int) -> Optional[int]:
        try:
            return self.tmdp.index(EndpointState(location, kind, index))
        except KeyError:
            return None

    def segment(self, index: int) -> Interval:
        if index + 1 < len(self.bounds):
            return Interval.open(self.bounds[index], self.bounds[index + 1])
        return Interval.open(self.bounds[index], INF)


def _edge_allowed(piece: Interval, guard: Optional[Interval]) -> bool:
    return guard is not None and piece.is_subset(guard)


def build_game_tmdp(pta: Pta, sat1: SatMap, sat2: SatMap, c: int) -> ReducedGame:
    """
    Construye T^r para (Φ1 U∼c Φ2).

    - Las esperas van de b_i a b_i⁺ (1 tick), de b_i⁺ a b_{i+1}⁻ (n·scale-2 ticks) y de
      b_{i+1}⁻ a b_{i+1} (1 tick); tras la última frontera, b⁺ espera en bucles de una unidad.
    - Entrar esperando en un segmento que no está contenido en Sat[l,Φ1] lleva al sumidero.
    - Las aristas duran 0; las ramas con reinicio van a (l', 0) y las demás a la misma
      posición en l'. Una arista solo está habilitada si su guarda contiene la posición
      y todos los destinos cumplen el invariante.
    """
    bounds = build_boundaries(pta, sat1, sat2, c)
    domain = _domain(pta)
    last = len(bounds) - 1
    points = [Interval.point(b) for b in bounds]
    segments = [Interval.open(bounds[i], bounds[i + 1]) for i in range(last)] + [Interval.open(bounds[last], INF)]

    def place(key: EndpointState) -> Interval:
        if key.kind == AT:
            return points[key.index]
        return segments[key.index if key.kind == AFTER else key.index - 1]

    keys: List = []
    for l in pta.locations:
        for i in range(len(bounds)):
            for kind in (AT, AFTER, BEFORE):
                if kind == BEFORE and i == 0:
                    continue
                if domain[l].covers(place(EndpointState(l, kind, i))):
                    keys.append(EndpointState(l, kind, i))
    keys.append(SINK)
    present = set(keys)
    scale = 4 * len(keys) + 4

    labels: Dict = {SINK: ()}
    for key in keys[:-1]:
        piece = place(key)
        names = []
        if sat1[key.location].covers(piece):
            names.append(PHI1)
        if sat2[key.location].covers(piece):
            names.append(PHI2)
        labels[key] = names

    guards = [constraint_to_interval(e.guard) for e in pta.edges]
    transitions: Dict = {SINK: [(1, {SINK: 1})]}
    for key in keys[:-1]:
        l, kind, i = key
        piece = place(key)
        moves = []
        if kind == AT and EndpointState(l, AFTER, i) in present:
            inside = sat1[l].covers(segments[i])
            moves.append((1, {EndpointState(l, AFTER, i) if inside else SINK: 1}))
        elif kind == AFTER and i < last and EndpointState(l, BEFORE, i + 1) in present:
            moves.append(((bounds[i + 1] - bounds[i]) * scale - 2, {EndpointState(l, BEFORE, i + 1): 1}))
        elif kind == AFTER and i == last:
            moves.append((scale, {key: 1}))
        elif kind == BEFORE and EndpointState(l, AT, i) in present:
            moves.append((1, {EndpointState(l, AT, i): 1}))
        for e_index, edge in pta.edges_from(l):
            if not _edge_allowed(piece, guards[e_index]):
                continue
            dist: Dict = {}
            for (resets, target), p in edge.dist.entries:
                goal = EndpointState(target, AT, 0) if resets else EndpointState(target, kind, i)
                if goal not in present:
                    dist = None
                    break
                dist[goal] = dist.get(goal, Fraction(0)) + p
            if dist is not None:
                moves.append((0, dist))
        if not moves:
            logger.warning(f"Estado sin transiciones en T^r: {key}; se envía al sumidero")
            moves.append((1, {SINK: 1}))
        transitions[key] = moves

    tmdp = DiscreteTmdp.from_keys(keys, keys[0], transitions, labels)
    logger.debug(f"T^r: {len(tmdp)} estados, |ℂ| = {len(bounds)}, escala {scale}")
    return ReducedGame(tmdp, bounds, scale, tuple(pta.locations))


# ==================== JUEGOS POR OPERADOR ====================

class OperatorGame(NamedTuple):
    """
    Juego de duraciones que decide un operador P⋈{0,1}(Φ1 U∼c Φ2).

    Atributos:
        name: alpha, beta, gamma, delta o el cuantificador de camino (exists-le, ...)
        fixed: Estados con valor fijo
        free: Estados que siguen jugando
        floor: Estados libres cuyo valor nunca baja de 0
        outer, inner: Elección de Pn sobre transiciones y de Pp sobre el soporte
        relation: Comparación del valor con c que equivale al operador
    """

    name: str
    fixed: Dict[int, float]
    free: List[int]
    floor: StateSet
    outer: Callable
    inner: Callable
    relation: str


def _reach_game(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet, name: str, outer, inner, relation) -> OperatorGame:
    n = len(tmdp)
    fixed = {s: (0 if s in S2 else INF) for s in range(n) if s in S2 or s not in S1}
    free = [s for s in range(n) if s in S1 and s not in S2]
    return OperatorGame(name, fixed, free, frozenset(), outer, inner, relation)


def _witness_game(tmdp: DiscreteTmdp, core: StateSet, cont: StateSet, name: str, outer, inner,
                  relation, floor: StateSet = frozenset()) -> OperatorGame:
    n = len(tmdp)
    fixed = {s: (0 if s in core else -INF) for s in range(n) if s not in cont}
    return OperatorGame(name, fixed, sorted(cont), frozenset(floor), outer, inner, relation)


def _all_paths_until(tmdp: DiscreteTmdp, S1: StateSet, S2: StateSet) -> StateSet:
    """Menor punto fijo de X = S2 ∪ {s ∈ S1 : todos los sucesores en X}."""
    result = set(S2)
    changed = True
    while changed:
        changed = False
        for s in S1:
            if s in result:
                continue
            moves = tmdp.transitions[s]
            if moves and all(t in result for _, dist in moves for t in dist.support()):
                result.add(s)
                changed = True
    return frozenset(result)


def operator_game(tmdp: DiscreteTmdp, node: ProbUntil, S1: StateSet, S2: StateSet) -> OperatorGame:
    """
    Tabla de operadores no triviales:

        P>0  U<=c: α <= c        P<1  U<=c: β > c
        P>0  U>=c: γ >= c        P<1  U>=c: δ < c
        P<=0 U<=c: no existe camino en <= c (camino más corto > c)
        P<=0 U>=c: no existe camino con testigo >= c (testigo más tardío < c)
        P>=1 U<=c: todos los caminos llegan en <= c
        P>=1 U>=c: todos los caminos llegan a P>=1(Φ1 U Φ2) con testigo >= c
    """
    mdp = tmdp.untimed()
    op, timing = node.op, node.timing.op
    S1, S2 = frozenset(S1), frozenset(S2)
    if timing == "<=":
        if op == ">":
            return _reach_game(tmdp, S1, S2, "alpha", max, min, "<=")
        if op == "<":
            return _reach_game(tmdp, S1, S2, "beta", min, max, ">")
        if op == "<=":
            return _reach_game(tmdp, S1, S2, "exists-le", min, min, ">")
        return _reach_game(tmdp, S1, S2, "forall-le", max, max, "<=")
    if op == ">":
        E = qual_forall_pos_until(mdp, S1, S2)
        return _witness_game(tmdp, E, step_sets(tmdp, S1, E, universal=True), "gamma", min, max, ">=")
    if op == "<":
        A = qual_exists_almost_until(mdp, S1, S2)
        return _witness_game(tmdp, A, step_sets(tmdp, S1, A, universal=False), "delta", max, min, "<")
    if op == "<=":
        E = qual_exists_until(mdp, S1, S2)
        cont = frozenset(s for s in S1 & E
                         if any(t in E for _, dist in tmdp.transitions[s] for t in dist.support()))
        return _witness_game(tmdp, E, cont, "exists-ge", max, max, "<")
    almost = qual_almost_until(mdp, S1, S2)
    reach = _all_paths_until(tmdp, S1, almost)
    cont = S1 & reach
    return _witness_game(tmdp, reach, cont, "forall-ge", min, min, ">=", floor=cont & almost)


def solve_operator(tmdp: DiscreteTmdp, game: OperatorGame) -> List[float]:
    return iterate_game(tmdp, game.fixed, game.free, game.outer, game.inner, game.floor)


# ==================== EXTENSIÓN A LOS SEGMENTOS ====================

@dataclass(frozen=True)
class Piece:
    """
    Trozo abierto (lo;hi) de un perfil: constante (slope 0) o anchor - v (slope -1).
    """

    lo: int
    hi: float
    slope: int
    anchor: ExtendedBound

    def value_at(self, v) -> Value:
        if self.slope == 0:
            return self.anchor
        if Fraction(v).denominator == 1:
            return ExtendedBound(self.anchor.k - int(v), self.anchor.flag)
        return Fraction(self.anchor.k) - Fraction(v)


@dataclass
class PiecewiseValue:
    """
    Valores de un juego extendidos a todas las valuaciones.

    Atributos:
        points: Por locación, valor en las fronteras de ℂ y en las marcas interiores
        pieces: Por locación, trozos abiertos entre marcas consecutivas (y el último no acotado)
        solves: Juegos locales resueltos para construirlos
    """

    points: Dict[str, Dict[int, ExtendedBound]] = field(default_factory=dict)
    pieces: Dict[str, List[Piece]] = field(default_factory=dict)
    solves: int = 0

    def value_at(self, location: str, v) -> Optional[Value]:
        v = Fraction(v)
        if v.denominator == 1 and int(v) in self.points.get(location, {}):
            return self.points[location][int(v)]
        for piece in self.pieces.get(location, []):
            if piece.lo < v < piece.hi:
                return piece.value_at(v)
        return None


def _segment_values(game: ReducedGame, op: OperatorGame, values: Sequence[float], index: int, u) -> Dict[str, float]:
    """
    Valores (en ticks) del juego en la posición u del segmento abierto index: actuar ya
    (destinos sin reinicio en la misma posición) o esperar hasta b_{index+1}⁻.
    """
    tmdp, last = game.tmdp, len(game.bounds) - 1
    reps = {l: game.state(l, AFTER, index) for l in game.location_names}
    reps = {l: s for l, s in reps.items() if s is not None}
    local_of = {s: l for l, s in reps.items()}
    free = [l for l, s in reps.items() if s not in op.fixed]
    current: Dict[str, float] = {l: op.fixed.get(s, INF) for l, s in reps.items()}
    end = game.bounds[index + 1] * game.scale - 1 if index < last else None

    def lookup(t: int, table: Dict[str, float]) -> float:
        return table[local_of[t]] if t in local_of else values[t]

    for _ in range(2 * len(reps) + 2):
        updated = dict(current)
        for l in free:
            s = reps[l]
            options = []
            for d, dist in tmdp.transitions[s]:
                if d == 0:
                    options.append(op.inner(lookup(t, current) for t in dist.support()))
                elif index < last:
                    options.append((end - u) + op.inner(values[t] for t in dist.support()))
                else:
                    options.append(d + op.inner(values[t] for t in dist.support()))
            value = op.outer(options) if options else INF
            updated[l] = max(0, value) if s in op.floor else value
        if updated == current:
            break
        current = updated
    return current


def _segment_marks(game: ReducedGame, op: OperatorGame, values: Sequence[float], index: int) -> List[int]:
    """
    Enteros de [b_i; b_{i+1}] donde el valor local puede cambiar de forma.

    El valor en la posición u combina con min y max constantes C y términos
    (end - u) + W; dos términos del mismo tipo nunca se cruzan, así que la forma solo
    cambia cerca de u = end - (C - W).
    """
    tmdp, M = game.tmdp, game.scale
    lo, hi = game.bounds[index], game.bounds[index + 1]
    reps = {s for s in (game.state(l, AFTER, index) for l in game.location_names) if s is not None}
    waits, constants = set(), {0}
    for s in reps:
        if s in op.fixed:
            constants.add(op.fixed[s])
            continue
        for d, dist in tmdp.transitions[s]:
            if d == 0:
                constants.update(values[t] for t in dist.support() if t not in reps)
            else:
                waits.add(op.inner(values[t] for t in dist.support()))
    end = hi * M - 1
    marks = {lo, hi}
    for w in waits:
        for k in constants:
            if math.isinf(w) or math.isinf(k):
                continue
            n = round(Fraction(end - (k - w), M))
            if lo < n < hi:
                marks.add(n)
    return sorted(marks)


def lift_values(game: ReducedGame, op: OperatorGame, values: Sequence[float]) -> PiecewiseValue:
    """
    Extiende los valores de T^r a todas las valuaciones.

    En las constantes de ℂ se usa el valor del estado b; cada segmento acotado se parte
    en las marcas de _segment_marks, se evalúa el juego local en cada marca y, entre dos
    marcas, en dos posiciones que fijan el trozo (constante o de pendiente -1). Tras la
    última frontera se usa el valor de b⁺.
    """
    M = game.scale
    result = PiecewiseValue()
    for l in game.location_names:
        result.points[l] = {}
        result.pieces[l] = []
    bounds = game.bounds
    for i, b in enumerate(bounds):
        for l in game.location_names:
            s = game.state(l, AT, i)
            if s is not None:
                result.points[l][b] = ExtendedBound.from_ticks(values[s], M)
        if i == len(bounds) - 1:
            for l in game.location_names:
                s = game.state(l, AFTER, i)
                if s is not None:
                    result.pieces[l].append(Piece(b, INF, 0, ExtendedBound.from_ticks(values[s], M)))
            continue
        marks = _segment_marks(game, op, values, i)
        for n in marks[1:-1]:
            result.solves += 1
            for l, t in _segment_values(game, op, values, i, n * M).items():
                result.points[l][n] = ExtendedBound.from_ticks(t, M)
        for n1, n2 in zip(marks, marks[1:]):
            u1, u2 = n1 * M + Fraction(M, 3), n2 * M - Fraction(M, 3)
            first = _segment_values(game, op, values, i, u1)
            second = _segment_values(game, op, values, i, u2)
            result.solves += 2
            for l, t1 in first.items():
                sloped = not math.isinf(t1) and t1 != second[l]
                anchor = ExtendedBound.from_ticks(t1 + u1 if sloped else t1, M)
                result.pieces[l].append(Piece(n1, n2, -1 if sloped else 0, anchor))
    return result


def _piece_satset(piece: Piece, relation: str, c: int) -> Optional[Interval]:
    """Parte del trozo abierto donde value ⋈ c, con el cruce calculado de forma exacta."""
    span = Interval.open(piece.lo, piece.hi)
    if piece.slope == 0:
        return span if meets(piece.anchor, relation, c) else None
    # anchor.k - x cruza c en x = anchor.k - c; el punto de cruce lleva la marca del anchor
    pivot = piece.anchor.k - c
    closed = meets(ExtendedBound(c, piece.anchor.flag), relation, c)
    if relation in ("<=", "<"):
        ray = Interval.make(pivot, closed, INF, False)
    else:
        ray = Interval.make(0, True, pivot, closed)
    return None if ray is None else ray.intersect(span)


def threshold_to_satset(pw: PiecewiseValue, relation: str, c: int) -> SatMap:
    """Conserva de cada locación los puntos y las partes de trozo cuyo valor cumple value ⋈ c."""
    sat: SatMap = {}
    for location, pieces in pw.pieces.items():
        kept: List[Interval] = [Interval.point(n) for n, value in pw.points.get(location, {}).items()
                                if meets(value, relation, c)]
        kept.extend(_piece_satset(piece, relation, c) for piece in pieces)
        sat[location] = IntervalSet(kept)
    return sat


def _states_to_satmap(game: ReducedGame, states: StateSet) -> SatMap:
    """SatMap de un conjunto de estados de T^r (el segmento entero sigue a su b⁺)."""
    pieces: Dict[str, List[Interval]] = {l: [] for l in game.location_names}
    for s in states:
        key = game.tmdp.states[s]
        if key == SINK or key.kind == BEFORE:
            continue
        if key.kind == AT:
            pieces[key.location].append(Interval.point(game.bounds[key.index]))
        else:
            pieces[key.location].append(game.segment(key.index))
    return {l: IntervalSet(p) for l, p in pieces.items()}


# ==================== ETIQUETADO ====================

def _until_satmap(pta: Pta, node: ProbUntil, sat1: SatMap, sat2: SatMap, domain: SatMap,
                  stats: Dict[str, int]) -> SatMap:
    op, zeta = node.op, node.threshold
    if (op == ">=" and zeta == 0) or (op == "<=" and zeta == 1):
        return dict(domain)
    if (op == ">" and zeta == 1) or (op == "<" and zeta == 0):
        return {l: IntervalSet() for l in pta.locations}
    c = node.timing.bound if node.timing else 0
    game = build_game_tmdp(pta, sat1, sat2, c)
    stats["reduced_states"] = max(stats.get("reduced_states", 0), len(game.tmdp))
    S1, S2 = game.tmdp.labelled(PHI1), game.tmdp.labelled(PHI2)
    if node.timing is None:
        states = threshold_until(game.tmdp.untimed(), op, zeta, S1, S2)
        return _states_to_satmap(game, states)
    operator = operator_game(game.tmdp, node, S1, S2)
    values = solve_operator(game.tmdp, operator)
    pw = lift_values(game, operator, values)
    stats["local_solves"] = stats.get("local_solves", 0) + pw.solves
    return threshold_to_satset(pw, operator.relation, c)


def interval_bound(pta: Pta, node) -> int:
    """Cota 2·|Ψ|·|prob| del número de intervalos de Sat[l,Ψ] en cada locación."""
    return 2 * formula_size(node) * max(1, len(pta.edges))


def _check_count(pta: Pta, node, sat: SatMap) -> None:
    limit = interval_bound(pta, node)
    for location, intervals in sat.items():
        if len(intervals) > limit:
            logger.warning(f"Sat[{location}] tiene {len(intervals)} intervalos (cota {limit})")


def ptctl1c_sat_maps(pta: Pta, f, stats: Optional[Dict[str, int]] = None) -> Dict:
    """
    Etiquetado de abajo arriba: subfórmula → SatMap.

    Raises:
        FormulaClassError: Si f no es PCTL ni PTCTL^{0/1}[<=,>=]
    """
    if classify_formula(f) not in (FormulaClass.PCTL, FormulaClass.PTCTL01_NONPUNCTUAL):
        raise FormulaClassError("check_ptctl01_noneq_1c solo admite PTCTL^{0/1}[<=,>=]")
    ensure_1c_gates(pta)
    stats = stats if stats is not None else {}
    domain = _domain(pta)
    sat: Dict = {}
    for node in subformulas(f):
        if isinstance(node, Bool):
            sat[node] = dict(domain) if node.value else {l: IntervalSet() for l in pta.locations}
        elif isinstance(node, Atom):
            sat[node] = {l: (domain[l] if node.name in pta.labels_of(l) else IntervalSet()) for l in pta.locations}
        elif isinstance(node, Not):
            sat[node] = {l: domain[l].difference(sat[node.sub][l]) for l in pta.locations}
        elif isinstance(node, And):
            sat[node] = {l: sat[node.left][l].intersection(sat[node.right][l]) for l in pta.locations}
        else:
            sat[node] = _until_satmap(pta, node, sat[node.left], sat[node.right], domain, stats)
        _check_count(pta, node, sat[node])
    return sat


def check_ptctl01_noneq_1c(pta: Pta, f, at: Optional[Tuple[str, Fraction]] = None) -> CheckResult:
    """
    Verificación de PTCTL^{0/1}[<=,>=] en un PTA de un reloj.

    Args:
        at: Configuración (l, v) para el veredicto; por defecto (inicial, 0)
    """
    stats: Dict[str, int] = {}
    sat = ptctl1c_sat_maps(pta, f, stats)[f]
    location, value = at if at is not None else (pta.initial, Fraction(0))
    value = Fraction(value)
    if location not in pta.locations:
        raise InvariantViolationError(f"Locación desconocida: {location}")
    if value < 0 or not _domain(pta)[location].contains(value):
        raise InvariantViolationError(f"La valuación {value} viola el invariante de {location}")
    verdict = sat[location].contains(value)
    stats["intervals"] = sum(len(s) for s in sat.values())
    logger.info(f"PTCTL 1C: {location},{value} -> {verdict}")
    return CheckResult("ptctl1c", sat, verdict, stats)
