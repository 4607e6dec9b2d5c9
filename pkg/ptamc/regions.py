"""
Oráculo de regiones
-------------------

Verificación por fuerza bruta de PTCTL completa (umbrales cuantitativos y subíndices
puntuales) sobre el grafo de regiones de un PTA de uno o dos relojes, con un reloj de
fórmula adicional por cada until temporizado. Es la referencia con la que se contrastan
los motores polinómicos en los tests.

Construcción:
    - Las esperas son pasos explícitos a la región sucesora. Cada región abierta tiene
      una copia de llegada (se entra por una arista o es el punto de partida) y una copia
      interior (se entra esperando); el until continuo solo acepta como testigo una
      copia interior si también cumple Φ1.
    - Las subfórmulas internas se evalúan primero y se guardan como conjuntos de pares
      (locación, región de los relojes del PTA).
    - Los valores racionales de la consulta se tratan escalando todas las constantes por
      el denominador común.
    - Los estados sin transiciones reciben un bucle (y un aviso en el registro).

Clases:
    - Region: Partes enteras y clases de partes fraccionarias ordenadas
    - RegionOracle: Evaluador con caché de subfórmulas

Funcionalidades principales:
    - enumerate_regions, build_region_mdp
    - oracle_check_ptctl, oracle_sat_map
"""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .config import get_settings
from .errors import InvariantViolationError, NotSingleClockError, OracleCapError
from .formula import And, Atom, Bool, Not, ProbUntil, Timing, subformulas
from .intervals import INF, Interval, IntervalSet
from .mdp import threshold_until
from .model import (ClockAtom, ClockConstraint, ProbEdge, Pta, UntimedMdp,
                    eval_constraint)

logger = logging.getLogger(__name__)

POINT, FRESH, INTERIOR = "p", "a", "d"


# ==================== REGIONES ====================

@dataclass(frozen=True)
class Region:
    """
    Región de relojes.

    Atributos:
        ints: Parte entera de cada reloj (cap+1 si el reloj supera su cota)
        classes: classes[0] son los relojes acotados con parte fraccionaria nula (puede
            ser vacía); el resto agrupa los acotados por parte fraccionaria creciente
    """

    ints: Tuple[int, ...]
    classes: Tuple[FrozenSet[int], ...]

    @property
    def singular(self) -> bool:
        return bool(self.classes[0])


def _ordered_partitions(items: Sequence[int]) -> Iterator[Tuple[FrozenSet[int], ...]]:
    items = list(items)
    if not items:
        yield ()
        return
    for size in range(1, len(items) + 1):
        for block in itertools.combinations(items, size):
            rest = [i for i in items if i not in block]
            for tail in _ordered_partitions(rest):
                yield (frozenset(block),) + tail


def enumerate_regions(caps: Sequence[int]) -> List[Region]:
    """Todas las regiones para relojes con las cotas dadas."""
    regions = []
    for ints in itertools.product(*[range(k + 2) for k in caps]):
        bounded = [i for i, n in enumerate(ints) if n <= caps[i]]
        fixed = [i for i in bounded if ints[i] == caps[i]]
        free = [i for i in bounded if ints[i] < caps[i]]
        for size in range(len(free) + 1):
            for extra in itertools.combinations(free, size):
                zero = frozenset(fixed) | frozenset(extra)
                moving = [i for i in free if i not in extra]
                for partition in _ordered_partitions(moving):
                    regions.append(Region(tuple(ints), (zero,) + partition))
    return regions


def region_of(values: Sequence[Fraction], caps: Sequence[int]) -> Region:
    ints, zero, fracs = [], set(), {}
    for i, value in enumerate(values):
        value = Fraction(value)
        if value > caps[i]:
            ints.append(caps[i] + 1)
            continue
        n = math.floor(value)
        ints.append(n)
        frac = value - n
        if frac == 0:
            zero.add(i)
        else:
            fracs.setdefault(frac, set()).add(i)
    rest = tuple(frozenset(fracs[k]) for k in sorted(fracs))
    return Region(tuple(ints), (frozenset(zero),) + rest)


def successor(region: Region, caps: Sequence[int]) -> Optional[Region]:
    """Región sucesora por paso del tiempo (None si todos los relojes superan su cota)."""
    zero, rest = region.classes[0], region.classes[1:]
    ints = list(region.ints)
    if zero:
        capped = {i for i in zero if ints[i] == caps[i]}
        for i in capped:
            ints[i] = caps[i] + 1
        moving = zero - capped
        return Region(tuple(ints), (frozenset(),) + ((moving,) if moving else ()) + rest)
    if rest:
        last = rest[-1]
        for i in last:
            ints[i] += 1
        return Region(tuple(ints), (last,) + rest[:-1])
    return None


def reset_region(region: Region, clocks: FrozenSet[int]) -> Region:
    if not clocks:
        return region
    ints = tuple(0 if i in clocks else n for i, n in enumerate(region.ints))
    zero = (region.classes[0] - clocks) | clocks
    rest = tuple(c - clocks for c in region.classes[1:] if c - clocks)
    return Region(ints, (zero,) + rest)


def project(region: Region, keep: int) -> Region:
    """Olvida los relojes con índice >= keep."""
    if len(region.ints) == keep:
        return region
    drop = frozenset(range(keep, len(region.ints)))
    rest = tuple(c - drop for c in region.classes[1:] if c - drop)
    return Region(region.ints[:keep], (region.classes[0] - drop,) + rest)


def atom_holds(region: Region, index: int, op: str, const: int, cap: int) -> bool:
    n = region.ints[index]
    if n > cap:
        return op in (">", ">=")
    exact = index in region.classes[0]
    if exact:
        return ClockAtom("_", op, const).holds(n)
    if op in ("<", "<="):
        return n < const
    return n >= const


def constraint_holds(region: Region, psi: ClockConstraint, index: Dict[str, int], caps: Sequence[int]) -> bool:
    if psi.unsat:
        return False
    return all(atom_holds(region, index[a.clock], a.op, a.const, caps[index[a.clock]]) for a in psi.atoms)


def region_interval(region: Region, cap: int) -> Interval:
    """Intervalo de valores de un reloj único en la región."""
    n = region.ints[0]
    if n > cap:
        return Interval.open(cap, INF)
    if region.singular:
        return Interval.point(n)
    return Interval.open(n, n + 1)


# ==================== ESCALADO ====================

def _scale_constraint(psi: ClockConstraint, q: int) -> ClockConstraint:
    if psi.unsat:
        return psi
    return ClockConstraint(tuple(ClockAtom(a.clock, a.op, a.const * q) for a in psi.atoms))


def scale_pta(pta: Pta, q: int) -> Pta:
    """Multiplica todas las constantes por q (cambio de unidad de tiempo)."""
    if q == 1:
        return pta
    return Pta(pta.name, pta.locations, pta.initial, pta.clocks,
               {l: _scale_constraint(psi, q) for l, psi in pta.invariants.items()},
               tuple(ProbEdge(e.source, _scale_constraint(e.guard, q), e.dist) for e in pta.edges),
               dict(pta.labels))


def scale_formula(f, q: int):
    if q == 1:
        return f
    if isinstance(f, Not):
        return Not(scale_formula(f.sub, q))
    if isinstance(f, And):
        return And(scale_formula(f.left, q), scale_formula(f.right, q))
    if isinstance(f, ProbUntil):
        timing = Timing(f.timing.op, f.timing.bound * q) if f.timing else None
        return ProbUntil(f.op, f.threshold, scale_formula(f.left, q), scale_formula(f.right, q), timing)
    return f


def _timing_bounds(f) -> List[int]:
    return [n.timing.bound for n in subformulas(f) if isinstance(n, ProbUntil) and n.timing]


# ==================== MDP DE REGIONES ====================

class RegionMdp(NamedTuple):
    mdp: UntimedMdp
    caps: Tuple[int, ...]
    starts: List[int]


def _explore(pta: Pta, caps: Sequence[int], starts: Sequence[Tuple[str, Region]]) -> RegionMdp:
    """Exploración FIFO del MDP de regiones desde los estados de partida."""
    index = {x: i for i, x in enumerate(pta.clocks)}

    def admits(location: str, region: Region) -> bool:
        return constraint_holds(region, pta.inv(location), index, caps)

    def state_for(location: str, region: Region):
        return (location, region, POINT if region.singular else FRESH)

    keys, seen, choices = [], {}, {}
    queue = deque()

    def visit(state):
        if state not in seen:
            seen[state] = len(keys)
            keys.append(state)
            queue.append(state)

    start_states = [state_for(l, r) for l, r in starts]
    for state in start_states:
        visit(state)

    deadlocks = 0
    while queue:
        state = queue.popleft()
        location, region, kind = state
        dists: List[Dict] = []
        if kind == FRESH:
            dists.append({(location, region, INTERIOR): Fraction(1)})
        else:
            nxt = successor(region, caps)
            if nxt is None:
                # todos los relojes por encima de su cota: la espera no cambia de región
                dists.append({state: Fraction(1)})
            elif admits(location, nxt):
                dists.append({(location, nxt, POINT if nxt.singular else INTERIOR): Fraction(1)})
        for _, edge in pta.edges_from(location):
            if not constraint_holds(region, edge.guard, index, caps):
                continue
            nu: Dict = {}
            for (resets, target), p in edge.dist.entries:
                moved = reset_region(region, frozenset(index[x] for x in resets))
                if not admits(target, moved):
                    nu = None
                    break
                key = state_for(target, moved)
                nu[key] = nu.get(key, Fraction(0)) + p
            if nu is not None and nu not in dists:
                dists.append(nu)
        if not dists:
            deadlocks += 1
            dists.append({state: Fraction(1)})
        choices[state] = dists
        for dist in dists:
            for target in dist:
                visit(target)

    if deadlocks:
        logger.warning(f"Oráculo: {deadlocks} estados sin transiciones en {pta.name}; se añadieron bucles")
    labels = {k: pta.labels_of(k[0]) for k in keys}
    mdp = UntimedMdp.from_keys(keys, start_states[0], choices, labels)
    logger.debug(f"MDP de regiones de {pta.name}: {len(mdp)} estados")
    return RegionMdp(mdp, tuple(caps), [seen[s] for s in start_states])


def _check_caps(pta: Pta, cap: int, extra: Sequence[int] = ()) -> None:
    if len(pta.clocks) > 2:
        raise OracleCapError(f"El oráculo admite como mucho 2 relojes del PTA ({len(pta.clocks)})")
    largest = max([pta.max_constant(), *extra])
    if largest > cap:
        raise OracleCapError(f"Constante {largest} por encima de la cota del oráculo ({cap})")


def build_region_mdp(pta: Pta, formula_clock: Optional[int] = None, cap: Optional[int] = None) -> RegionMdp:
    """
    MDP de regiones desde todas las configuraciones (l, región) que cumplen el invariante.

    Con formula_clock = c se añade un reloj z (nunca reiniciado por el PTA) acotado por c,
    que empieza en 0.
    """
    cap = cap or get_settings().oracle_cap
    extra = [formula_clock] if formula_clock is not None else []
    _check_caps(pta, cap, extra)
    oracle = RegionOracle(pta, cap)
    caps = oracle.caps + tuple(extra)
    starts = [(l, oracle.extend(r, bool(extra))) for l, r in oracle.universe]
    return _explore(pta, caps, starts)


# ==================== ORÁCULO ====================

class RegionOracle:
    """
    Evaluador de PTCTL sobre regiones.

    Atributos:
        pta: Autómata (ya escalado si la consulta usa valores racionales)
        caps: Cota de cada reloj del PTA (la constante máxima)
        universe: Pares (locación, región) que cumplen el invariante

    Métodos principales:
        sat(f): Conjunto de pares (locación, región) que cumplen f
        holds_at(f, location, region): Veredicto en una sola configuración
    """

    def __init__(self, pta: Pta, cap: int):
        self.pta = pta
        self.cap = cap
        self.caps = tuple(pta.max_constant() for _ in pta.clocks)
        self.index = {x: i for i, x in enumerate(pta.clocks)}
        self.universe = [(l, r) for l in pta.locations for r in enumerate_regions(self.caps)
                         if constraint_holds(r, pta.inv(l), self.index, self.caps)]
        self._cache: Dict = {}

    def extend(self, region: Region, timed: bool) -> Region:
        """Añade el reloj de fórmula z = 0."""
        if not timed:
            return region
        z = len(self.caps)
        return Region(region.ints + (0,), (region.classes[0] | {z},) + region.classes[1:])

    def sat(self, f) -> FrozenSet[Tuple[str, Region]]:
        for node in subformulas(f):
            if node not in self._cache:
                self._cache[node] = self._evaluate(node, self.universe)
        return self._cache[f]

    def holds_at(self, f, location: str, region: Region) -> bool:
        if isinstance(f, ProbUntil):
            S1, S2 = self.sat(f.left), self.sat(f.right)
            return bool(self._until(f, S1, S2, [(location, region)]))
        return (location, region) in self.sat(f)

    def _evaluate(self, node, starts) -> FrozenSet:
        everything = frozenset(self.universe)
        if isinstance(node, Bool):
            return everything if node.value else frozenset()
        if isinstance(node, Atom):
            return frozenset(p for p in self.universe if node.name in self.pta.labels_of(p[0]))
        if isinstance(node, Not):
            return everything - self._cache[node.sub]
        if isinstance(node, And):
            return self._cache[node.left] & self._cache[node.right]
        return self._until(node, self._cache[node.left], self._cache[node.right], starts)

    def _until(self, node: ProbUntil, S1: FrozenSet, S2: FrozenSet, starts) -> FrozenSet:
        timed = node.timing is not None
        caps = self.caps + ((node.timing.bound,) if timed else ())
        z = len(self.caps)
        built = _explore(self.pta, caps, [(l, self.extend(r, timed)) for l, r in starts])
        mdp = built.mdp
        keep = len(self.caps)

        left, goal = set(), set()
        for i, (location, region, kind) in enumerate(mdp.states):
            base = (location, project(region, keep))
            in1, in2 = base in S1, base in S2
            if in1:
                left.add(i)
            if not in2 or (kind == INTERIOR and not in1):
                continue
            if timed and not _timing_holds(region, z, node.timing, caps[z]):
                continue
            goal.add(i)
        result = threshold_until(mdp, node.op, node.threshold, frozenset(left), frozenset(goal))
        return frozenset(starts[k] for k, i in enumerate(built.starts) if i in result)


def _timing_holds(region: Region, z: int, timing: Timing, cap: int) -> bool:
    if timing.op == "=":
        return (atom_holds(region, z, ">=", timing.bound, cap)
                and atom_holds(region, z, "<=", timing.bound, cap))
    return atom_holds(region, z, timing.op, timing.bound, cap)


# ==================== CONSULTAS ====================

def _valuation(pta: Pta, value) -> List[Fraction]:
    if isinstance(value, (list, tuple)):
        values = [Fraction(v) for v in value]
        if len(values) == 1:
            values = values * len(pta.clocks)
    else:
        values = [Fraction(value)] * len(pta.clocks)
    if len(values) != len(pta.clocks):
        raise InvariantViolationError(f"Se esperaban {len(pta.clocks)} valores de reloj")
    if any(v < 0 for v in values):
        raise InvariantViolationError("Valores de reloj negativos")
    return values


def oracle_check_ptctl(pta: Pta, f, at: Tuple[str, Union[Fraction, Sequence[Fraction]]],
                       cap: Optional[int] = None, scale: int = 1) -> bool:
    """
    Veredicto de f en la configuración at = (l, v) sobre el grafo de regiones.

    Args:
        at: Locación y valor (o valores, uno por reloj) racionales
        cap: Constante máxima admitida tras escalar (PTAMC_ORACLE_CAP por defecto)
        scale: Refinamiento adicional de la rejilla de constantes
    """
    cap = cap or get_settings().oracle_cap
    location, value = at
    values = _valuation(pta, value)
    if not eval_constraint(pta.inv(location), dict(zip(pta.clocks, values))):
        raise InvariantViolationError(f"La valuación {value} viola el invariante de {location}")
    q = scale
    for v in values:
        q = q * v.denominator // math.gcd(q, v.denominator)
    scaled_pta, scaled_f = scale_pta(pta, q), scale_formula(f, q)
    _check_caps(scaled_pta, cap, _timing_bounds(scaled_f))
    oracle = RegionOracle(scaled_pta, cap)
    region = region_of([v * q for v in values], oracle.caps)
    verdict = oracle.holds_at(scaled_f, location, region)
    logger.info(f"Oráculo: {location},{value} -> {verdict} (escala {q})")
    return verdict


def oracle_sat_map(pta: Pta, f, cap: Optional[int] = None) -> Dict[str, IntervalSet]:
    """Locación → intervalos donde f se cumple (solo PTAs de un reloj)."""
    if len(pta.clocks) != 1:
        raise NotSingleClockError("oracle_sat_map solo admite PTAs de un reloj")
    cap = cap or get_settings().oracle_cap
    _check_caps(pta, cap, _timing_bounds(f))
    oracle = RegionOracle(pta, cap)
    pieces: Dict[str, List[Interval]] = {l: [] for l in pta.locations}
    for location, region in oracle.sat(f):
        pieces[location].append(region_interval(region, oracle.caps[0]))
    return {l: IntervalSet(p) for l, p in pieces.items()}
