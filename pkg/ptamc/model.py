"""
Modelo central: restricciones de reloj, distribuciones, PTA, TMDP y MDP
-----------------------------------------------------------------------

Tipos inmutables que comparten todos los motores del verificador, junto con los
validadores estructurales (validación de invariantes, no-Zenoness estructural,
invariantes sin bloqueo).

Dependencias:
    - fractions: Probabilidades y valuaciones exactas
    - networkx: Enumeración de ciclos simples del grafo de soporte

Clases:
    - ClockAtom / ClockConstraint: Átomos x ∼ c y su conjunción normalizada
    - Distribution: Distribución discreta con pesos racionales
    - ProbEdge / Pta: Autómata temporizado probabilista (1 o 2 relojes)
    - DiscreteTmdp / UntimedMdp: Procesos de decisión de Markov con y sin duraciones
    - CountdownGame: Juego de cuenta atrás sobre un grafo con pesos
    - Diagnostic: Resultado de una validación

Funcionalidades principales:
    - validate_pta, validate_tmdp, validate_game
    - is_structurally_non_zeno, has_non_deadlocking_invariants
    - upper_closure, reset_quotient, eval_constraint, constraint_to_interval
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping,
                    Optional, Sequence, Tuple)

import networkx as nx

from .errors import ModelValidationError, NotSingleClockError, ZenoError
from .intervals import INF, Interval, IntervalSet

logger = logging.getLogger(__name__)

# Variables de tipo usadas en todo el paquete
Valuation = Mapping[str, Fraction]
StateSet = FrozenSet[int]

COMPARATORS = ("<", "<=", ">", ">=")
_COMPARATOR_ORDER = {op: i for i, op in enumerate(COMPARATORS)}


# ==================== RESTRICCIONES DE RELOJ ====================

@dataclass(frozen=True)
class ClockAtom:
    """Átomo x ∼ c con ∼ ∈ {<, <=, >, >=} y c natural."""

    clock: str
    op: str
    const: int

    def __post_init__(self):
        if self.op not in _COMPARATOR_ORDER:
            raise ValueError(f"Comparador desconocido: {self.op}")
        if self.const < 0 or int(self.const) != self.const:
            raise ValueError(f"La constante de reloj debe ser natural: {self.const}")

    def holds(self, value) -> bool:
        if self.op == "<":
            return value < self.const
        if self.op == "<=":
            return value <= self.const
        if self.op == ">":
            return value > self.const
        return value >= self.const

    def interval(self) -> Optional[Interval]:
        if self.op == "<":
            return Interval.make(0, True, self.const, False)
        if self.op == "<=":
            return Interval.make(0, True, self.const, True)
        if self.op == ">":
            return Interval.make(self.const, False, INF, False)
        return Interval.make(self.const, True, INF, False)

    def sort_key(self):
        return (self.clock, _COMPARATOR_ORDER[self.op], self.const)

    def __str__(self):
        return f"{self.clock}{self.op}{self.const}"


@dataclass(frozen=True)
class ClockConstraint:
    """
    Conjunción de átomos de reloj en forma normal.

    Los átomos se guardan ordenados por (reloj, comparador, constante) y sin repetidos;
    la conjunción vacía es true. El indicador unsat representa la constante false
    (resultado de reset_quotient).

    Atributos:
        atoms: Tupla ordenada de ClockAtom
        unsat: True si la restricción es literalmente false
    """

    atoms: Tuple[ClockAtom, ...] = ()
    unsat: bool = False

    def __post_init__(self):
        normal = tuple(sorted(set(self.atoms), key=lambda a: a.sort_key()))
        object.__setattr__(self, "atoms", () if self.unsat else normal)

    @classmethod
    def true(cls) -> "ClockConstraint":
        return cls(())

    @classmethod
    def false(cls) -> "ClockConstraint":
        return cls((), unsat=True)

    @classmethod
    def of(cls, *atoms: ClockAtom) -> "ClockConstraint":
        return cls(tuple(atoms))

    def conjoin(self, other: "ClockConstraint") -> "ClockConstraint":
        if self.unsat or other.unsat:
            return ClockConstraint.false()
        return ClockConstraint(self.atoms + other.atoms)

    def clocks(self) -> FrozenSet[str]:
        return frozenset(a.clock for a in self.atoms)

    def constants(self) -> FrozenSet[int]:
        return frozenset(a.const for a in self.atoms)

    def is_true(self) -> bool:
        return not self.unsat and not self.atoms

    def interval_on(self, clock: str) -> Optional[Interval]:
        """Proyección sobre un reloj: intervalo de valores admitidos (None si vacío)."""
        if self.unsat:
            return None
        result: Optional[Interval] = Interval.everything()
        for atom in self.atoms:
            if atom.clock != clock:
                continue
            piece = atom.interval()
            result = None if piece is None else result.intersect(piece)
            if result is None:
                return None
        return result

    def is_satisfiable(self) -> bool:
        if self.unsat:
            return False
        return all(self.interval_on(c) is not None for c in self.clocks())

    def __str__(self):
        if self.unsat:
            return "false"
        if not self.atoms:
            return "true"
        return " & ".join(str(a) for a in self.atoms)


def eval_constraint(psi: ClockConstraint, v: Valuation) -> bool:
    """Evalúa la conjunción de átomos en la valuación v."""
    if psi.unsat:
        return False
    for atom in psi.atoms:
        if atom.clock not in v:
            raise KeyError(f"La valuación no asigna valor al reloj {atom.clock}")
        if not atom.holds(v[atom.clock]):
            return False
    return True


def constraint_to_interval(psi: ClockConstraint) -> Optional[Interval]:
    """Intervalo ⟦ψ⟧ de una restricción de un solo reloj (None si es vacío)."""
    clocks = psi.clocks()
    if len(clocks) > 1:
        raise NotSingleClockError(f"La restricción '{psi}' no es de un solo reloj")
    if psi.unsat:
        return None
    if not clocks:
        return Interval.everything()
    return psi.interval_on(next(iter(clocks)))


def upper_closure(psi: ClockConstraint) -> ClockConstraint:
    """upper(ψ): x<c pasa a x>c-1 ∧ x<c y x<=c pasa a x>=c ∧ x<=c."""
    if psi.unsat:
        return psi
    atoms: List[ClockAtom] = []
    for atom in psi.atoms:
        atoms.append(atom)
        if atom.op == "<" and atom.const >= 1:
            atoms.append(ClockAtom(atom.clock, ">", atom.const - 1))
        elif atom.op == "<=":
            atoms.append(ClockAtom(atom.clock, ">=", atom.const))
    return ClockConstraint(tuple(atoms))


def reset_quotient(resets: Iterable[str], psi: ClockConstraint) -> ClockConstraint:
    """
    [X:=0]ψ: para cada x ∈ X, los átomos x>c y x>=c' (c' >= 1) se vuelven false.
    """
    resets = frozenset(resets)
    if psi.unsat:
        return psi
    for atom in psi.atoms:
        if atom.clock not in resets:
            continue
        if atom.op == ">" or (atom.op == ">=" and atom.const >= 1):
            return ClockConstraint.false()
    return psi


# ==================== DISTRIBUCIONES ====================

@dataclass(frozen=True, eq=False)
class Distribution:
    """
    Distribución discreta con pesos racionales.

    No se autovalida: validate_distribution devuelve los diagnósticos, de modo que un
    modelo mal formado pueda cargarse y reportarse completo.

    Atributos:
        entries: Pares (resultado, probabilidad) en orden de declaración, sin repetidos
    """

    entries: Tuple[Tuple[Hashable, Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Hashable, Fraction]]) -> "Distribution":
        merged: Dict[Hashable, Fraction] = {}
        for outcome, weight in pairs:
            merged[outcome] = merged.get(outcome, Fraction(0)) + Fraction(weight)
        return cls(tuple(merged.items()))

    @classmethod
    def dirac(cls, outcome: Hashable) -> "Distribution":
        return cls(((outcome, Fraction(1)),))

    @classmethod
    def uniform(cls, outcomes: Sequence[Hashable]) -> "Distribution":
        outcomes = list(dict.fromkeys(outcomes))
        weight = Fraction(1, len(outcomes))
        return cls(tuple((o, weight) for o in outcomes))

    def support(self) -> Tuple[Hashable, ...]:
        return tuple(o for o, p in self.entries if p > 0)

    def mass(self) -> Fraction:
        return sum((p for _, p in self.entries), Fraction(0))

    def prob(self, outcome: Hashable) -> Fraction:
        for o, p in self.entries:
            if o == outcome:
                return p
        return Fraction(0)

    def map(self, func) -> "Distribution":
        """Imagen de la distribución por func (acumulando masas que coinciden)."""
        return Distribution.from_pairs((func(o), p) for o, p in self.entries)

    def as_dict(self) -> Dict[Hashable, Fraction]:
        return dict(self.entries)

    def __iter__(self) -> Iterator[Tuple[Hashable, Fraction]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, Distribution) and dict(self.entries) == dict(other.entries)

    def __hash__(self):
        return hash(frozenset(self.entries))

    def __repr__(self):
        body = ", ".join(f"{o!r}: {p}" for o, p in self.entries)
        return f"Distribution({{{body}}})"


# ==================== DIAGNÓSTICOS ====================

@dataclass(frozen=True)
class Diagnostic:
    """Problema detectado por un validador: código, mensaje y lugar."""

    code: str
    message: str
    where: str = ""

    def __str__(self):
        return f"[{self.code}] {self.where}: {self.message}" if self.where else f"[{self.code}] {self.message}"


def validate_distribution(dist: Distribution, where: str) -> List[Diagnostic]:
    problems = []
    if not dist.entries:
        problems.append(Diagnostic("empty-support", "la distribución no tiene soporte", where))
        return problems
    for outcome, weight in dist.entries:
        if weight <= 0 or weight > 1:
            problems.append(Diagnostic("weight-range", f"peso {weight} fuera de (0,1] para {outcome}", where))
    total = dist.mass()
    if total != 1:
        problems.append(Diagnostic("distribution-mass", f"la masa de la distribución suma {total} y no 1", where))
    return problems


# ==================== PTA ====================

@dataclass(frozen=True)
class ProbEdge:
    """
    Arista probabilista (l, g, p) con p distribución sobre (conjunto de reinicio, destino).

    Atributos:
        source: Locación de origen
        guard: Restricción de guarda
        dist: Distribution sobre pares (frozenset de relojes, locación destino)
    """

    source: str
    guard: ClockConstraint
    dist: Distribution

    def branches(self) -> Tuple[Tuple[FrozenSet[str], str], ...]:
        return tuple(self.dist.support())


@dataclass(frozen=True, eq=False)
class Pta:
    """
    Autómata temporizado probabilista.

    Atributos:
        name: Nombre del modelo
        locations: Locaciones en orden de declaración
        initial: Locación inicial
        clocks: Relojes (1 o 2 para los algoritmos)
        invariants: Invariante por locación (true si falta)
        edges: Aristas probabilistas en orden de declaración
        labels: Proposiciones atómicas por locación

    Métodos principales:
        inv, edges_from, labels_of, constants, max_constant
    """

    name: str
    locations: Tuple[str, ...]
    initial: str
    clocks: Tuple[str, ...]
    invariants: Mapping[str, ClockConstraint] = field(default_factory=dict)
    edges: Tuple[ProbEdge, ...] = ()
    labels: Mapping[str, FrozenSet[str]] = field(default_factory=dict)

    def inv(self, location: str) -> ClockConstraint:
        return self.invariants.get(location, ClockConstraint.true())

    def edges_from(self, location: str) -> List[Tuple[int, ProbEdge]]:
        return [(i, e) for i, e in enumerate(self.edges) if e.source == location]

    def labels_of(self, location: str) -> FrozenSet[str]:
        return frozenset(self.labels.get(location, frozenset()))

    def constants(self) -> List[int]:
        values = {0}
        for psi in self.invariants.values():
            values |= psi.constants()
        for edge in self.edges:
            values |= edge.guard.constants()
        return sorted(values)

    def max_constant(self) -> int:
        return self.constants()[-1]

    @property
    def clock(self) -> str:
        """Reloj único de un 1C-PTA."""
        if len(self.clocks) != 1:
            raise NotSingleClockError(f"El PTA '{self.name}' tiene {len(self.clocks)} relojes")
        return self.clocks[0]

    def atoms(self) -> FrozenSet[str]:
        result = set()
        for values in self.labels.values():
            result |= set(values)
        return frozenset(result)

    def __eq__(self, other):
        if not isinstance(other, Pta):
            return NotImplemented
        return (self.name == other.name and self.locations == other.locations
                and self.initial == other.initial and self.clocks == other.clocks
                and all(self.inv(l) == other.inv(l) for l in self.locations)
                and self.edges == other.edges
                and all(self.labels_of(l) == other.labels_of(l) for l in self.locations))

    __hash__ = None


def validate_pta(pta: Pta) -> List[Diagnostic]:
    """
    Comprueba los invariantes estructurales del PTA sin lanzar excepciones.

    Devuelve una lista vacía si el modelo es válido; cada diagnóstico indica la
    locación o la arista afectada.
    """
    problems: List[Diagnostic] = []
    declared = set(pta.locations)
    clocks = set(pta.clocks)

    if not 1 <= len(pta.clocks) <= 2:
        problems.append(Diagnostic("clock-count", f"se admiten 1 o 2 relojes ({len(pta.clocks)} declarados)", pta.name))
    if len(clocks) != len(pta.clocks):
        problems.append(Diagnostic("clock-duplicate", "relojes repetidos", pta.name))
    if len(declared) != len(pta.locations):
        problems.append(Diagnostic("location-duplicate", "locaciones repetidas", pta.name))
    if pta.initial not in declared:
        problems.append(Diagnostic("initial-missing", f"la locación inicial '{pta.initial}' no existe", pta.name))

    for location, psi in pta.invariants.items():
        where = f"locación {location}"
        if location not in declared:
            problems.append(Diagnostic("location-missing", "invariante de una locación no declarada", where))
        unknown = psi.clocks() - clocks
        if unknown:
            problems.append(Diagnostic("clock-unknown", f"relojes no declarados {sorted(unknown)}", where))
    for location in pta.labels:
        if location not in declared:
            problems.append(Diagnostic("location-missing", "etiquetas de una locación no declarada", f"locación {location}"))

    for i, edge in enumerate(pta.edges):
        where = f"arista {i} desde {edge.source}"
        if edge.source not in declared:
            problems.append(Diagnostic("location-missing", f"origen '{edge.source}' no declarado", where))
        unknown = edge.guard.clocks() - clocks
        if unknown:
            problems.append(Diagnostic("clock-unknown", f"relojes no declarados {sorted(unknown)}", where))
        problems.extend(validate_distribution(edge.dist, where))
        for resets, target in (o for o, _ in edge.dist.entries):
            if target not in declared:
                problems.append(Diagnostic("location-missing", f"destino '{target}' no declarado", where))
            if not set(resets) <= clocks:
                problems.append(Diagnostic("reset-unknown", f"reinicio de relojes no declarados {sorted(set(resets) - clocks)}", where))

    if pta.initial in declared and not any(p.code == "clock-unknown" for p in problems):
        zero = {x: Fraction(0) for x in pta.clocks}
        if not eval_constraint(pta.inv(pta.initial), zero):
            problems.append(Diagnostic("initial-invariant", "la valuación nula no satisface el invariante inicial",
                                       f"locación {pta.initial}"))
    return problems


def ensure_valid_pta(pta: Pta, single_clock: bool = False) -> None:
    """Lanza ModelValidationError si validate_pta encuentra problemas."""
    problems = validate_pta(pta)
    if single_clock and len(pta.clocks) != 1:
        problems.append(Diagnostic("clock-count", "se requiere un PTA de un solo reloj", pta.name))
    if problems:
        raise ModelValidationError(f"El PTA '{pta.name}' no es válido", problems)


def _implies_at_least_one(guard: ClockConstraint, clock: str) -> bool:
    if not guard.is_satisfiable():
        return True
    projected = guard.interval_on(clock)
    return projected is not None and projected.is_subset(Interval(1, True, INF, False))


def is_structurally_non_zeno(pta: Pta) -> bool:
    """
    True si todo ciclo de aristas reinicia algún reloj x y atraviesa una guarda que
    implica x >= 1.

    Los nodos del grafo de soporte son las ramas (arista, reinicio, destino); una rama
    enlaza con las ramas de las aristas que salen de su destino.
    """
    graph = nx.DiGraph()
    branches = []
    for i, edge in enumerate(pta.edges):
        for resets, target in edge.branches():
            node = (i, resets, target)
            branches.append(node)
            graph.add_node(node)
    for node in branches:
        _, _, target = node
        for j, edge in pta.edges_from(target):
            for resets, nxt in edge.branches():
                graph.add_edge(node, (j, resets, nxt))

    for cycle in nx.simple_cycles(graph):
        reset_clocks = set()
        for _, resets, _ in cycle:
            reset_clocks |= set(resets)
        guards = [pta.edges[i].guard for i, _, _ in cycle]
        if not any(_implies_at_least_one(g, x) for x in reset_clocks for g in guards):
            logger.debug(f"Ciclo Zeno en {pta.name}: {cycle}")
            return False
    return True


Box = Dict[str, Interval]


def _box(psi: ClockConstraint, clocks: Sequence[str]) -> Optional[Box]:
    """Restricción como producto de intervalos, uno por reloj (None si es vacía)."""
    if psi.unsat:
        return None
    box = {}
    for clock in clocks:
        piece = psi.interval_on(clock)
        if piece is None:
            return None
        box[clock] = piece
    return box


def _enabled_box(pta: Pta, edge: ProbEdge) -> Optional[Box]:
    """
    Valuaciones donde g ∧ ⋀ [X:=0]inv(l') se cumple; los átomos de relojes reiniciados
    se evalúan en 0.
    """
    box = _box(edge.guard, pta.clocks)
    for resets, target in edge.branches():
        if box is None:
            return None
        quotient = reset_quotient(resets, pta.inv(target))
        if quotient.unsat:
            return None
        for atom in quotient.atoms:
            if atom.clock in resets:
                if not atom.holds(0):
                    return None
                continue
            piece = atom.interval()
            box[atom.clock] = None if piece is None else box[atom.clock].intersect(piece)
            if box[atom.clock] is None:
                return None
    return box


def _pieces(interval: Interval, cuts: Iterable) -> List[Interval]:
    """Partición de interval en puntos y tramos abiertos según los cortes."""
    marks = sorted({interval.lo, *(c for c in cuts if c != INF and interval.contains(c))}
                   | ({interval.hi} if interval.hi != INF else set()))
    candidates = [Interval.point(m) for m in marks]
    candidates += [Interval.open(a, b) for a, b in zip(marks, marks[1:])]
    if interval.hi == INF:
        candidates.append(Interval.open(marks[-1], INF))
    return [p for p in (interval.intersect(c) for c in candidates) if p is not None]


def _box_covered(box: Box, cover: List[Box], clocks: Sequence[str]) -> bool:
    """True si el producto box está incluido en la unión de las cajas de cover."""
    if not clocks:
        return bool(cover)
    clock, rest = clocks[0], clocks[1:]
    if not rest:
        return IntervalSet(b[clock] for b in cover).covers(box[clock])
    cuts = [e for b in cover for e in (b[clock].lo, b[clock].hi)]
    for piece in _pieces(box[clock], cuts):
        # cada tramo está contenido en el intervalo de la caja o es disjunto de él
        over = [b for b in cover if piece.is_subset(b[clock])]
        if not over or not _box_covered(box, over, rest):
            return False
    return True


def has_non_deadlocking_invariants(pta: Pta) -> bool:
    """
    upper(inv(l)) ⇒ ⋁ (g ∧ ⋀ [X:=0]inv(l')) para toda locación l.

    Las restricciones son conjunciones de átomos de un solo reloj, es decir, cajas; la
    implicación se comprueba de forma exacta como inclusión de la caja upper(inv(l)) en
    la unión de las cajas de las aristas habilitadas, partiendo cada eje por los extremos
    de esas cajas.
    """
    for location in pta.locations:
        upper = _box(upper_closure(pta.inv(location)), pta.clocks)
        if upper is None:
            continue
        cover = [b for b in (_enabled_box(pta, e) for _, e in pta.edges_from(location)) if b is not None]
        if not cover or not _box_covered(upper, cover, list(pta.clocks)):
            logger.debug(f"Bloqueo en {location}: upper(inv) = {upper_closure(pta.inv(location))}")
            return False
    return True


def ensure_1c_gates(pta: Pta) -> None:
    """Puertas de entrada de los motores de un reloj: validez, un reloj, no-Zeno y sin bloqueo."""
    ensure_valid_pta(pta, single_clock=True)
    if not is_structurally_non_zeno(pta):
        raise ZenoError(f"El PTA '{pta.name}' no es estructuralmente no-Zeno")
    if not has_non_deadlocking_invariants(pta):
        raise ModelValidationError(f"El PTA '{pta.name}' tiene invariantes con bloqueo",
                                   [Diagnostic("deadlock", "upper(inv) sin arista habilitada", pta.name)])


# ==================== PROCESOS DE DECISIÓN ====================

@dataclass(frozen=True, eq=False)
class UntimedMdp:
    """
    MDP sin tiempo sobre estados indexados 0..n-1.

    Atributos:
        states: Identificador de cada estado (cualquier valor hashable)
        initial: Índice del estado inicial
        choices: Por estado, tupla de Distribution sobre índices de estado
        labels: Por estado, conjunto de proposiciones atómicas
    """

    states: Tuple[Hashable, ...]
    initial: int
    choices: Tuple[Tuple[Distribution, ...], ...]
    labels: Tuple[FrozenSet[str], ...]
    _index: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index.update({s: i for i, s in enumerate(self.states)})

    @classmethod
    def from_keys(cls, keys: Sequence[Hashable], initial: Hashable,
                  choices: Mapping[Hashable, Sequence[Mapping[Hashable, Fraction]]],
                  labels: Mapping[Hashable, Iterable[str]]) -> "UntimedMdp":
        """Construye el MDP a partir de estados con nombre."""
        index = {k: i for i, k in enumerate(keys)}
        table = []
        for k in keys:
            dists = []
            for dist in choices.get(k, ()):
                built = Distribution.from_pairs((index[t], Fraction(p)) for t, p in dist.items())
                if built not in dists:
                    dists.append(built)
            table.append(tuple(dists))
        return cls(tuple(keys), index[initial], tuple(table),
                   tuple(frozenset(labels.get(k, ())) for k in keys))

    def __len__(self):
        return len(self.states)

    def index(self, state: Hashable) -> int:
        return self._index[state]

    def successors(self, s: int) -> FrozenSet[int]:
        return frozenset(t for dist in self.choices[s] for t in dist.support())

    def labelled(self, atom: str) -> StateSet:
        return frozenset(i for i, names in enumerate(self.labels) if atom in names)

    def all_states(self) -> StateSet:
        return frozenset(range(len(self.states)))

    def transition_count(self) -> int:
        return sum(len(c) for c in self.choices)


@dataclass(frozen=True, eq=False)
class DiscreteTmdp:
    """
    TMDP discreto: transiciones (s, d, ν) con duración natural d.

    Atributos:
        states: Identificador de cada estado
        initial: Índice del estado inicial
        transitions: Por estado, tupla de pares (duración, Distribution sobre índices)
        labels: Por estado, conjunto de proposiciones atómicas
    """

    states: Tuple[Hashable, ...]
    initial: int
    transitions: Tuple[Tuple[Tuple[int, Distribution], ...], ...]
    labels: Tuple[FrozenSet[str], ...]
    _index: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index.update({s: i for i, s in enumerate(self.states)})

    @classmethod
    def from_keys(cls, keys: Sequence[Hashable], initial: Hashable,
                  transitions: Mapping[Hashable, Sequence[Tuple[int, Mapping[Hashable, Fraction]]]],
                  labels: Mapping[Hashable, Iterable[str]]) -> "DiscreteTmdp":
        index = {k: i for i, k in enumerate(keys)}
        table = []
        for k in keys:
            moves = []
            for duration, dist in transitions.get(k, ()):
                move = (int(duration), Distribution.from_pairs((index[t], Fraction(p)) for t, p in dist.items()))
                if move not in moves:
                    moves.append(move)
            table.append(tuple(moves))
        return cls(tuple(keys), index[initial], tuple(table),
                   tuple(frozenset(labels.get(k, ())) for k in keys))

    def __len__(self):
        return len(self.states)

    def index(self, state: Hashable) -> int:
        return self._index[state]

    def labelled(self, atom: str) -> StateSet:
        return frozenset(i for i, names in enumerate(self.labels) if atom in names)

    def all_states(self) -> StateSet:
        return frozenset(range(len(self.states)))

    def untimed(self) -> UntimedMdp:
        """MDP subyacente T^u: se olvidan las duraciones."""
        choices = []
        for moves in self.transitions:
            dists = []
            for _, dist in moves:
                if dist not in dists:
                    dists.append(dist)
            choices.append(tuple(dists))
        return UntimedMdp(self.states, self.initial, tuple(choices), self.labels)

    def transition_count(self) -> int:
        return sum(len(t) for t in self.transitions)

    def __eq__(self, other):
        if not isinstance(other, DiscreteTmdp):
            return NotImplemented
        return (self.states == other.states and self.initial == other.initial
                and self.transitions == other.transitions and self.labels == other.labels)

    __hash__ = None


def validate_tmdp(tmdp: DiscreteTmdp) -> List[Diagnostic]:
    problems = []
    n = len(tmdp.states)
    if not 0 <= tmdp.initial < n:
        problems.append(Diagnostic("initial-missing", "estado inicial fuera de rango"))
    for s, moves in enumerate(tmdp.transitions):
        where = f"estado {tmdp.states[s]}"
        if not moves:
            problems.append(Diagnostic("no-transition", "el estado no tiene transiciones", where))
        for duration, dist in moves:
            if duration < 0:
                problems.append(Diagnostic("duration", f"duración negativa {duration}", where))
            problems.extend(validate_distribution(dist, where))
            if any(not 0 <= t < n for t in dist.support()):
                problems.append(Diagnostic("state-missing", "destino fuera de rango", where))
    return problems


def is_tmdp_non_zeno(tmdp: DiscreteTmdp) -> bool:
    """Sin ciclos de duración total nula: el grafo de transiciones de duración 0 es acíclico."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(tmdp.states)))
    for s, moves in enumerate(tmdp.transitions):
        for duration, dist in moves:
            if duration == 0:
                graph.add_edges_from((s, t) for t in dist.support())
    return nx.is_directed_acyclic_graph(graph)


def ensure_tmdp_gates(tmdp: DiscreteTmdp) -> None:
    problems = validate_tmdp(tmdp)
    if problems:
        raise ModelValidationError("El TMDP no es válido", problems)
    if not is_tmdp_non_zeno(tmdp):
        raise ZenoError("El TMDP tiene ciclos de duración nula")


# ==================== JUEGOS DE CUENTA ATRÁS ====================

@dataclass(frozen=True)
class CountdownGame:
    """
    Juego de cuenta atrás (𝚂, 𝚃).

    Atributos:
        states: Estados en orden de declaración
        transitions: Tripletas (origen, duración > 0, destino)
    """

    states: Tuple[str, ...]
    transitions: Tuple[Tuple[str, int, str], ...]

    def moves(self, state: str) -> Dict[int, List[str]]:
        """Duraciones disponibles desde state y sus destinos."""
        result: Dict[int, List[str]] = {}
        for src, d, dst in self.transitions:
            if src == state and dst not in result.setdefault(d, []):
                result[d].append(dst)
        return result


def validate_game(game: CountdownGame) -> List[Diagnostic]:
    problems = []
    declared = set(game.states)
    for src, d, dst in game.transitions:
        where = f"transición {src} -{d}-> {dst}"
        if d <= 0:
            problems.append(Diagnostic("duration", "las duraciones deben ser positivas", where))
        for name in (src, dst):
            if name not in declared:
                problems.append(Diagnostic("state-missing", f"estado '{name}' no declarado", where))
    return problems


# ==================== RESULTADOS ====================

@dataclass
class CheckResult:
    """
    Resultado de una verificación sobre un PTA.

    Atributos:
        engine: Motor usado (interval, ptctl1c, oracle, games, mdp)
        sat_map: Locación → IntervalSet donde se cumple la fórmula (1 reloj)
        verdict: Veredicto en el estado consultado (None si no se pidió)
        stats: Tamaños de las estructuras construidas
    """

    engine: str
    sat_map: Dict[str, object] = field(default_factory=dict)
    verdict: Optional[bool] = None
    stats: Dict[str, int] = field(default_factory=dict)
