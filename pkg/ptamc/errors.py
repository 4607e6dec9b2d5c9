"""
Jerarquía de errores de ptamc
-----------------------------

Todas las excepciones del paquete derivan de PtamcError, de modo que la interfaz de
línea de comandos puede capturarlas en un único punto y devolver el código de salida 2.

Clases:
    - PtamcError: Raíz de la jerarquía
    - ModelValidationError: Modelo que no cumple los invariantes estructurales
    - DslSyntaxError: Error de sintaxis en un modelo o fórmula (con línea y columna)
    - FormulaClassError: Fórmula fuera de la clase que acepta un motor
    - ZenoError: Modelo estructuralmente Zeno
    - OracleCapError: Límites del oráculo de regiones superados
    - NotSingleClockError: Restricción que menciona más de un reloj
    - InvariantViolationError: Valuación fuera del invariante de la locación
"""

from typing import List, Optional


class PtamcError(Exception):
    """Error base del verificador."""


class ModelValidationError(PtamcError):
    """
    El modelo no supera la validación estructural.

    Atributos:
        diagnostics: Lista de diagnósticos (ver model.Diagnostic)
    """

    def __init__(self, message: str, diagnostics: Optional[List] = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])

    def __str__(self):
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = "; ".join(str(d) for d in self.diagnostics)
        return f"{base}: {details}"


class DslSyntaxError(PtamcError):
    """Error de sintaxis con posición en el texto de entrada."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (línea {line}, columna {column})"
        super().__init__(f"{message}{where}")


class FormulaClassError(PtamcError):
    """La fórmula no pertenece a la clase soportada por el motor."""


class ZenoError(PtamcError):
    """El modelo admite ciclos sin paso de tiempo."""


class OracleCapError(PtamcError):
    """El oráculo de regiones no admite el número de relojes o las constantes pedidas."""


class NotSingleClockError(PtamcError):
    """Se esperaba una restricción sobre un único reloj."""


class InvariantViolationError(PtamcError):
    """La valuación no satisface el invariante de la locación."""
