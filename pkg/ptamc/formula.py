"""
Fórmulas PTCTL
--------------

Árbol de sintaxis abstracta de PTCTL (tras eliminar los operadores derivados) y la
clasificación en sublógicas que decide qué motor puede verificar cada fórmula.

Clases:
    - Bool, Atom, Not, And: Fórmulas de estado proposicionales
    - Timing: Subíndice temporal (∼ ∈ {<=, =, >=}, c natural)
    - ProbUntil: P⋈ζ(Φ1 U∼c Φ2) (timing None para el until sin tiempo)
    - FormulaClass: PCTL ⊂ PTCTL01_NONPUNCTUAL ⊂ PTCTL01 ⊂ PTCTL, y PTCTL_NONPUNCTUAL

Funcionalidades principales:
    - classify_formula: Menor sublógica que contiene la fórmula
    - subformulas: Recorrido en postorden (evaluación de abajo arriba)
    - format_formula: Texto en la sintaxis concreta del DSL
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

PROB_COMPARATORS = ("<", "<=", ">=", ">")
TIMING_COMPARATORS = ("<=", "=", ">=")

# Comparador reflejado usado por la dualidad de G
MIRROR = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Timing:
    """Subíndice ∼c de un until temporizado."""

    op: str
    bound: int

    def __post_init__(self):
        if self.op not in TIMING_COMPARATORS:
            raise ValueError(f"Subíndice temporal no soportado: {self.op}")
        if self.bound < 0:
            raise ValueError(f"La cota temporal debe ser natural: {self.bound}")

    def __str__(self):
        return f"[{self.op}{self.bound}]"


@dataclass(frozen=True)
class ProbUntil:
    """
    Operador probabilista P⋈ζ(Φ1 U∼c Φ2).

    Atributos:
        op: Comparador ⋈ ∈ {<, <=, >=, >}
        threshold: ζ racional en [0,1]
        left, right: Φ1 y Φ2
        timing: Timing o None (until sin tiempo)
    """

    op: str
    threshold: Fraction
    left: "Formula"
    right: "Formula"
    timing: Optional[Timing] = None

    def __post_init__(self):
        if self.op not in PROB_COMPARATORS:
            raise ValueError(f"Comparador de probabilidad desconocido: {self.op}")
        if not 0 <= self.threshold <= 1:
            raise ValueError(f"Umbral fuera de [0,1]: {self.threshold}")

    @property
    def qualitative(self) -> bool:
        return self.threshold in (0, 1)


Formula = Union[Bool, Atom, Not, And, ProbUntil]

TRUE = Bool(True)
FALSE = Bool(False)


class FormulaClass(Enum):
    PCTL = "PCTL"
    PTCTL01_NONPUNCTUAL = "PTCTL01_NONPUNCTUAL"
    PTCTL01 = "PTCTL01"
    PTCTL_NONPUNCTUAL = "PTCTL_NONPUNCTUAL"
    PTCTL = "PTCTL"


# ==================== CONSTRUCTORES DERIVADOS ====================

def neg(f: Formula) -> Formula:
    if isinstance(f, Not):
        return f.sub
    if isinstance(f, Bool):
        return Bool(not f.value)
    return Not(f)


def disj(left: Formula, right: Formula) -> Formula:
    return neg(And(neg(left), neg(right)))


def eventually(op: str, threshold, target: Formula, timing: Optional[Timing] = None) -> ProbUntil:
    return ProbUntil(op, Fraction(threshold), TRUE, target, timing)


def globally(op: str, threshold, body: Formula, timing: Optional[Timing] = None) -> ProbUntil:
    """P⋈ζ(G Φ) como P⋈̄(1-ζ)(F ¬Φ) con ⋈̄ el comparador reflejado."""
    return ProbUntil(MIRROR[op], 1 - Fraction(threshold), TRUE, neg(body), timing)


# ==================== RECORRIDOS ====================

def subformulas(f: Formula) -> Iterator[Formula]:
    """Subfórmulas en postorden, sin repetir las estructuralmente iguales."""
    seen = set()

    def walk(node):
        if isinstance(node, Not):
            yield from walk(node.sub)
        elif isinstance(node, And):
            yield from walk(node.left)
            yield from walk(node.right)
        elif isinstance(node, ProbUntil):
            yield from walk(node.left)
            yield from walk(node.right)
        if node not in seen:
            seen.add(node)
            yield node

    return walk(f)


def formula_size(f: Formula) -> int:
    """|Ψ|: número de nodos del árbol."""
    if isinstance(f, Not):
        return 1 + formula_size(f.sub)
    if isinstance(f, (And, ProbUntil)):
        return 1 + formula_size(f.left) + formula_size(f.right)
    return 1


def formula_depth(f: Formula) -> int:
    if isinstance(f, Not):
        return formula_depth(f.sub)
    if isinstance(f, (And, ProbUntil)):
        inner = max(formula_depth(f.left), formula_depth(f.right))
        return inner + (1 if isinstance(f, ProbUntil) else 0)
    return 0


def atoms_of(f: Formula) -> set:
    return {node.name for node in subformulas(f) if isinstance(node, Atom)}


# ==================== CLASIFICACIÓN ====================

def classify_formula(f: Formula) -> FormulaClass:
    """Menor sublógica que contiene a f."""
    operators = [node for node in subformulas(f) if isinstance(node, ProbUntil)]
    timed = [node for node in operators if node.timing is not None]
    if not timed:
        return FormulaClass.PCTL
    qualitative = all(node.qualitative for node in operators)
    punctual = any(node.timing.op == "=" for node in timed)
    if qualitative:
        return FormulaClass.PTCTL01 if punctual else FormulaClass.PTCTL01_NONPUNCTUAL
    return FormulaClass.PTCTL if punctual else FormulaClass.PTCTL_NONPUNCTUAL


# ==================== TEXTO ====================

def format_threshold(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_formula(f: Formula) -> str:
    """Texto en la sintaxis concreta; parse_formula(format_formula(f)) == f."""
    if isinstance(f, Bool):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f'"{f.name}"'
    if isinstance(f, Not):
        return f"!({format_formula(f.sub)})"
    if isinstance(f, And):
        return f"({format_formula(f.left)} & {format_formula(f.right)})"
    timing = str(f.timing) if f.timing else ""
    return (f"P{{{f.op}{format_threshold(f.threshold)}}}"
            f"[ {format_formula(f.left)} U{timing} {format_formula(f.right)} ]")
