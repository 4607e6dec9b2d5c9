"""
ptamc - Verificación de autómatas temporizados probabilistas
------------------------------------------------------------

Verificador de PTAs de uno y dos relojes frente a PCTL y PTCTL^{0/1}[<=,>=], con
resolución de juegos de cuenta atrás, alcanzabilidad hacia delante exacta y un oráculo
de regiones para contrastar todos los motores.

Uso:
    from ptamc import parse_model, parse_formula, check_ptctl01_noneq_1c
    pta = parse_model(open("models/fig1.ppta").read())
    result = check_ptctl01_noneq_1c(pta, parse_formula('P{>0}[F[<=9] "error"]'))
"""

__version__ = "1.0.0"

from .abstraction import build_pctl_mdp, build_refined_mdp, check_pctl_1c
from .countdown import game_to_1cpta, game_to_2cpta, game_to_tmdp, solve_countdown
from .dsl import export_dot, export_json, parse_formula, parse_model, serialize_model
from .errors import PtamcError
from .formula import FormulaClass, classify_formula
from .forward import build_fr_mdp, check_isomorphic_fr_first
from .games import check_ptctl01_noneq
from .mdp import check_pctl
from .ptctl1c import check_ptctl01_noneq_1c
from .regions import oracle_check_ptctl, oracle_sat_map

__all__ = [
    "__version__",
    "PtamcError", "FormulaClass", "classify_formula",
    "parse_model", "parse_formula", "serialize_model", "export_dot", "export_json",
    "check_pctl", "check_pctl_1c", "build_pctl_mdp", "build_refined_mdp",
    "check_ptctl01_noneq", "check_ptctl01_noneq_1c",
    "solve_countdown", "game_to_tmdp", "game_to_1cpta", "game_to_2cpta",
    "build_fr_mdp", "check_isomorphic_fr_first",
    "oracle_check_ptctl", "oracle_sat_map",
]
