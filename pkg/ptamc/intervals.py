"""
Intervalos de valores de reloj
------------------------------

Representación exacta de intervalos de ℝ≥0 con extremos abiertos o cerrados y de uniones
normalizadas de intervalos (IntervalSet), que es la forma en la que los motores de un
reloj guardan los conjuntos de satisfacción Sat[l, Ψ].

Funcionalidades principales:
    - Interval: intervalo no vacío con extremos naturales/racionales o ∞
    - IntervalSet: unión ordenada, disjunta y maximal de intervalos
    - Operaciones de conjunto (unión, intersección, complemento relativo)
    - Representación textual estilo "[0;3)" y "(5;∞)"

Los valores se manejan con fractions.Fraction; el extremo ∞ es math.inf.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple, Union

Number = Union[int, Fraction, float]

INF = math.inf


def format_value(value: Number) -> str:
    """Texto de un extremo: enteros sin decimales, racionales como a/b, ∞."""
    if value == INF:
        return "∞"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _lower_key(value: Number, closed: bool) -> Tuple[Number, int]:
    # clave mayor = cota inferior más restrictiva
    return (value, 0 if closed else 1)


def _upper_key(value: Number, closed: bool) -> Tuple[Number, int]:
    # clave menor = cota superior más restrictiva
    return (value, 1 if closed else 0)


@dataclass(frozen=True, order=False)
class Interval:
    """
    Intervalo no vacío de valores de reloj.

    Atributos:
        lo: Extremo inferior (natural o racional)
        lo_closed: True si el extremo inferior pertenece al intervalo
        hi: Extremo superior (natural, racional o math.inf)
        hi_closed: True si el extremo superior pertenece al intervalo
    """

    lo: Number
    lo_closed: bool
    hi: Number
    hi_closed: bool

    def __post_init__(self):
        if self.lo < 0:
            raise ValueError(f"Extremo inferior negativo: {self.lo}")
        if self.hi == INF and self.hi_closed:
            raise ValueError("El extremo ∞ siempre es abierto")
        if not Interval.is_nonempty(self.lo, self.lo_closed, self.hi, self.hi_closed):
            raise ValueError(f"Intervalo vacío: {self.lo}, {self.hi}")

    # ==================== CONSTRUCTORES ====================

    @staticmethod
    def is_nonempty(lo: Number, lo_closed: bool, hi: Number, hi_closed: bool) -> bool:
        if lo < hi:
            return True
        return lo == hi and lo_closed and hi_closed and hi != INF

    @classmethod
    def make(cls, lo: Number, lo_closed: bool, hi: Number, hi_closed: bool) -> Optional["Interval"]:
        """Crea el intervalo o devuelve None si es vacío."""
        if hi == INF:
            hi_closed = False
        if lo < 0:
            lo, lo_closed = 0, True
        if not cls.is_nonempty(lo, lo_closed, hi, hi_closed):
            return None
        return cls(_norm(lo), lo_closed, _norm(hi), hi_closed)

    @classmethod
    def point(cls, value: Number) -> "Interval":
        return cls(_norm(value), True, _norm(value), True)

    @classmethod
    def open(cls, lo: Number, hi: Number) -> "Interval":
        return cls(_norm(lo), False, _norm(hi), False)

    @classmethod
    def everything(cls) -> "Interval":
        return cls(0, True, INF, False)

    # ==================== CONSULTAS ====================

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Number) -> bool:
        if value < self.lo or (value == self.lo and not self.lo_closed):
            return False
        if value > self.hi or (value == self.hi and not self.hi_closed):
            return False
        return True

    def __contains__(self, value: Number) -> bool:
        return self.contains(value)

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo, lo_closed = max((self.lo, self.lo_closed), (other.lo, other.lo_closed),
                            key=lambda e: _lower_key(*e))
        hi, hi_closed = min((self.hi, self.hi_closed), (other.hi, other.hi_closed),
                            key=lambda e: _upper_key(*e))
        return Interval.make(lo, lo_closed, hi, hi_closed)

    def is_subset(self, other: "Interval") -> bool:
        return (_lower_key(self.lo, self.lo_closed) >= _lower_key(other.lo, other.lo_closed)
                and _upper_key(self.hi, self.hi_closed) <= _upper_key(other.hi, other.hi_closed))

    def sample(self) -> Fraction:
        """Un punto interior (o el propio punto) del intervalo."""
        if self.is_point:
            return Fraction(self.lo)
        if self.hi == INF:
            return Fraction(self.lo) + 1
        return (Fraction(self.lo) + Fraction(self.hi)) / 2

    def sort_key(self):
        return (_lower_key(self.lo, self.lo_closed), _upper_key(self.hi, self.hi_closed))

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_value(self.lo)};{format_value(self.hi)}{right}"

    def __repr__(self):
        return f"Interval({self})"


def _norm(value: Number) -> Number:
    if value == INF:
        return INF
    value = Fraction(value)
    return int(value) if value.denominator == 1 else value


def _touching(left: Interval, right: Interval) -> bool:
    """True si right empieza dentro o justo a continuación de left (ordenados)."""
    if left.hi == INF:
        return True
    if right.lo < left.hi:
        return True
    if right.lo == left.hi:
        return left.hi_closed or right.lo_closed
    return False


class IntervalSet:
    """
    Unión normalizada de intervalos: ordenada, disjunta y maximal.

    Atributos:
        intervals: Tupla de Interval ordenados por extremo inferior

    Métodos principales:
        union, intersection, difference, complement, contains, is_subset
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Optional[Interval]] = ()):
        self.intervals: Tuple[Interval, ...] = IntervalSet._normalize(
            [i for i in intervals if i is not None]
        )

    @staticmethod
    def _normalize(items: List[Interval]) -> Tuple[Interval, ...]:
        items = sorted(items, key=lambda i: i.sort_key())
        merged: List[Interval] = []
        for item in items:
            if merged and _touching(merged[-1], item):
                last = merged[-1]
                hi, hi_closed = max((last.hi, last.hi_closed), (item.hi, item.hi_closed),
                                    key=lambda e: _upper_key(*e))
                merged[-1] = Interval(last.lo, last.lo_closed, hi, hi_closed)
            else:
                merged.append(item)
        return tuple(merged)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def everything(cls) -> "IntervalSet":
        return cls([Interval.everything()])

    # ==================== OPERACIONES ====================

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        parts = []
        for a in self.intervals:
            for b in other.intervals:
                piece = a.intersect(b)
                if piece is not None:
                    parts.append(piece)
        return IntervalSet(parts)

    def complement(self) -> "IntervalSet":
        """Complemento respecto de [0;∞)."""
        gaps = []
        cur, cur_closed = 0, True
        for item in self.intervals:
            gaps.append(Interval.make(cur, cur_closed, item.lo, not item.lo_closed))
            if item.hi == INF:
                return IntervalSet(gaps)
            cur, cur_closed = item.hi, not item.hi_closed
        gaps.append(Interval.make(cur, cur_closed, INF, False))
        return IntervalSet(gaps)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersection(other.complement())

    # ==================== CONSULTAS ====================

    def contains(self, value: Number) -> bool:
        return any(i.contains(value) for i in self.intervals)

    def __contains__(self, value: Number) -> bool:
        return self.contains(value)

    def covers(self, interval: Interval) -> bool:
        """True si el intervalo completo está incluido en el conjunto."""
        return any(interval.is_subset(i) for i in self.intervals)

    def is_subset(self, other: "IntervalSet") -> bool:
        return all(other.covers(i) for i in self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def endpoints(self) -> List[Number]:
        values = set()
        for item in self.intervals:
            values.add(item.lo)
            if item.hi != INF:
                values.add(item.hi)
        return sorted(values)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __str__(self):
        if not self.intervals:
            return "∅"
        return " ∪ ".join(str(i) for i in self.intervals)

    def __repr__(self):
        return f"IntervalSet({self})"
