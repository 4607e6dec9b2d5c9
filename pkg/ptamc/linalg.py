"""
Álgebra lineal exacta
---------------------

Eliminación de Gauss-Jordan sobre racionales (fractions.Fraction) con filas dispersas,
usada para evaluar políticas en la iteración de políticas del motor de MDPs.
"""

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping

Row = Dict[Hashable, Fraction]


def solve_sparse(rows: Mapping[Hashable, Mapping[Hashable, Fraction]],
                 rhs: Mapping[Hashable, Fraction]) -> Dict[Hashable, Fraction]:
    """
    Resuelve A·x = b con A cuadrada de rango completo.

    Args:
        rows: Por ecuación (identificada como su variable), coeficientes no nulos
        rhs: Término independiente de cada ecuación

    Returns:
        Valor exacto de cada variable

    Raises:
        ValueError: Si el sistema es singular
    """
    equations: List[Row] = []
    constants: List[Fraction] = []
    for key, row in rows.items():
        equations.append({v: Fraction(c) for v, c in row.items() if c != 0})
        constants.append(Fraction(rhs.get(key, 0)))

    variables = list(rows.keys())
    pivot_of: Dict[Hashable, int] = {}
    used = set()
    for var in variables:
        pivot = next((r for r in range(len(equations)) if r not in used and equations[r].get(var, 0) != 0), None)
        if pivot is None:
            raise ValueError(f"Sistema singular: sin pivote para {var!r}")
        used.add(pivot)
        pivot_of[var] = pivot
        factor = equations[pivot][var]
        equations[pivot] = {v: c / factor for v, c in equations[pivot].items()}
        constants[pivot] /= factor
        for r, row in enumerate(equations):
            if r == pivot or var not in row:
                continue
            f = row[var]
            for v, c in equations[pivot].items():
                value = row.get(v, Fraction(0)) - f * c
                if value == 0:
                    row.pop(v, None)
                else:
                    row[v] = value
            constants[r] -= f * constants[pivot]

    # Cada fila pivote queda reducida a x_var = b
    return {var: constants[pivot_of[var]] for var in variables}
