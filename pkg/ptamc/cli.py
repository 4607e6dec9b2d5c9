"""
Interfaz de línea de comandos de ptamc
--------------------------------------

Punto de entrada del verificador. Lee modelos y fórmulas, elige el motor según la clase
de la fórmula y el número de relojes, y devuelve un código de salida:
0 = la fórmula se cumple en la configuración consultada (o gana el jugador 1),
1 = no se cumple, 2 = error de uso o de validación.

Subcomandos:
    - check MODEL --formula F [--at l,v] [--json] [--emit-dot] [--oracle-cap N]
    - check --batch DIR --formula F
    - solve-countdown FILE --state s --count c
    - generate countdown-to-{tmdp,1cpta,2cpta} FILE --state s --count c
    - forward-reach FILE --target a [--objective max|min] [--emit-dot]
    - oracle-check FILE --formula F --at l,v
    - export FILE --format dot|json

Tabla de motores (check):
    - PTA de 1 reloj, PCTL → abstracción por intervalos
    - PTA de 1 reloj, PTCTL^{0/1}[<=,>=] → juegos de duración sobre T^r
    - Resto (2 relojes, umbrales cuantitativos, subíndices =c) → oráculo de regiones
    - TMDP discreto, PCTL → MDP sin tiempo; PTCTL^{0/1}[<=,>=] → juegos α/β/γ/δ

Uso:
    python -m ptamc check models/fig1.ppta --formula 'P{>0}[F[<=9] "error"]' --at init,0
"""

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .abstraction import check_pctl_1c
from .config import get_settings, load_pandas, setup_logging
from .countdown import PLAYER1, game_to_1cpta, game_to_2cpta, game_to_tmdp, solve_countdown
from .dsl import export_dot, export_json, jsonable, parse_formula, parse_model, parse_rational, serialize_model
from .errors import InvariantViolationError, PtamcError
from .formula import FormulaClass, classify_formula, format_formula
from .forward import build_fr_mdp, check_isomorphic_fr_first, fr_reach_prob
from .games import check_ptctl01_noneq
from .mdp import check_pctl
from .model import CheckResult, CountdownGame, DiscreteTmdp, Pta
from .ptctl1c import check_ptctl01_noneq_1c
from .regions import oracle_check_ptctl, oracle_sat_map

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

ORACLE_NOTICE = "motor oráculo (exponencial)"
MODEL_SUFFIXES = (".ppta", ".ptmdp")
SEPARATOR = "=" * 60

_POLYNOMIAL_1C = {
    FormulaClass.PCTL: "interval",
    FormulaClass.PTCTL01_NONPUNCTUAL: "ptctl1c",
}


# ==================== INFORME ====================

@dataclass
class RunReport:
    """
    Resultado de una ejecución de check.

    Atributos:
        digests: sha256 del modelo y de la fórmula
        formula_class: Clase mínima de la fórmula
        engine: Motor elegido por la tabla de despacho
        verdict: Veredicto en la configuración consultada
        sat_map: Locación (o estado) → conjunto donde se cumple la fórmula
        notices: Avisos para el usuario (p. ej. uso del oráculo)
        wall_time: Segundos de reloj de pared
    """

    digests: Dict[str, str]
    formula_class: str
    engine: str
    verdict: Optional[bool] = None
    sat_map: Dict[str, Any] = field(default_factory=dict)
    stats: Dict[str, int] = field(default_factory=dict)
    notices: List[str] = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Documento JSON estable: el tiempo de pared no se incluye."""
        return {
            "digests": self.digests,
            "formula_class": self.formula_class,
            "engine": self.engine,
            "verdict": self.verdict,
            "sat_map": jsonable(self.sat_map),
            "stats": self.stats,
            "notices": self.notices,
        }


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise PtamcError(f"No se pudo leer {path}: {e}") from e


def parse_at(text: str) -> Tuple[str, Any]:
    """'l,v' o 'l,v1,v2' → (l, Fraction) o (l, (Fraction, Fraction)); 'l' solo para TMDPs."""
    parts = [p.strip() for p in text.split(",")]
    if not parts[0]:
        raise PtamcError(f"Configuración vacía en --at: '{text}'")
    try:
        values = [parse_rational(p) for p in parts[1:]]
    except (ValueError, ZeroDivisionError) as e:
        raise PtamcError(f"Valor de reloj no válido en --at: '{text}'") from e
    if not values:
        return parts[0], None
    return parts[0], values[0] if len(values) == 1 else tuple(values)


# ==================== DESPACHO ====================

def select_engine(model, formula_class: FormulaClass) -> str:
    """Motor de la tabla de despacho para (clase de fórmula, tipo de modelo)."""
    if isinstance(model, Pta):
        if len(model.clocks) == 1 and formula_class in _POLYNOMIAL_1C:
            return _POLYNOMIAL_1C[formula_class]
        return "oracle"
    if isinstance(model, DiscreteTmdp):
        if formula_class == FormulaClass.PCTL:
            return "mdp"
        if formula_class == FormulaClass.PTCTL01_NONPUNCTUAL:
            return "games"
        raise PtamcError(f"Los TMDPs discretos no admiten fórmulas de clase {formula_class.value}")
    raise PtamcError("check solo admite PTAs (.ppta) y TMDPs discretos (.ptmdp)")


def _pta_at(pta: Pta, at: Optional[Tuple[str, Any]]) -> Tuple[str, Any]:
    if at is None:
        zero = Fraction(0) if len(pta.clocks) == 1 else tuple(Fraction(0) for _ in pta.clocks)
        return pta.initial, zero
    location, value = at
    if location not in pta.locations:
        raise InvariantViolationError(f"Locación desconocida: {location}")
    if value is None:
        raise PtamcError("--at necesita el valor de los relojes: l,v o l,v1,v2")
    if isinstance(value, tuple) and len(pta.clocks) == 1:
        raise PtamcError(f"El PTA '{pta.name}' tiene un solo reloj")
    if len(pta.clocks) == 2 and not isinstance(value, tuple):
        value = (value, value)
    return location, value


def _run_oracle(pta: Pta, f, at, cap: int) -> CheckResult:
    verdict = oracle_check_ptctl(pta, f, at, cap=cap)
    sat = oracle_sat_map(pta, f, cap=cap) if len(pta.clocks) == 1 else {}
    return CheckResult("oracle", sat, verdict)


def _run_tmdp(tmdp: DiscreteTmdp, f, engine: str, at: Optional[Tuple[str, Any]]) -> CheckResult:
    if engine == "mdp":
        sat = check_pctl(tmdp.untimed(), f)
    else:
        sat = check_ptctl01_noneq(tmdp, f)[f]
    state = tmdp.initial
    if at is not None:
        try:
            state = tmdp.index(at[0])
        except KeyError:
            raise PtamcError(f"Estado desconocido: {at[0]}") from None
    names = sorted(str(tmdp.states[s]) for s in sat)
    return CheckResult(engine, {"estados": names}, state in sat, {"states": len(tmdp)})


def run_check(model_text: str, formula_text: str, at_text: Optional[str] = None,
              oracle_cap: Optional[int] = None) -> RunReport:
    """Ejecuta un check completo y devuelve su RunReport."""
    start = time.perf_counter()
    model = parse_model(model_text)
    f = parse_formula(formula_text)
    formula_class = classify_formula(f)
    engine = select_engine(model, formula_class)
    at = parse_at(at_text) if at_text else None
    cap = get_settings().with_overrides(oracle_cap=oracle_cap).oracle_cap
    notices: List[str] = []

    if isinstance(model, DiscreteTmdp):
        result = _run_tmdp(model, f, engine, at)
    else:
        at = _pta_at(model, at)
        if engine == "interval":
            result = check_pctl_1c(model, f, at)
        elif engine == "ptctl1c":
            result = check_ptctl01_noneq_1c(model, f, at)
        else:
            notices.append(ORACLE_NOTICE)
            logger.warning(f"Fórmula {formula_class.value} con {len(model.clocks)} reloj(es): se usa el {ORACLE_NOTICE}")
            result = _run_oracle(model, f, at, cap)

    report = RunReport(
        digests={"model": digest(model_text), "formula": digest(format_formula(f))},
        formula_class=formula_class.value,
        engine=result.engine,
        verdict=result.verdict,
        sat_map=result.sat_map,
        stats=dict(result.stats),
        notices=notices,
    )
    report.wall_time = time.perf_counter() - start
    logger.info(f"check [{report.engine}] {formula_text} -> {report.verdict} ({report.wall_time:.3f}s)")
    return report


def _verdict_code(verdict: Optional[bool]) -> int:
    return EXIT_OK if verdict else EXIT_FALSE


# ==================== SALIDA ====================

def print_report(report: RunReport) -> None:
    print(SEPARATOR)
    print(f"🔎 Clase de la fórmula: {report.formula_class}")
    print(f"⚙️ Motor: {report.engine}")
    for notice in report.notices:
        print(f"⚠️ Aviso: {notice}")
    print(SEPARATOR)
    if report.sat_map:
        print("📋 Conjuntos de satisfacción:")
        for key, value in report.sat_map.items():
            shown = value if isinstance(value, list) else str(value)
            print(f"   {key}: {shown}")
    mark = "✅" if report.verdict else "❌"
    print(f"{mark} Veredicto: {'se cumple' if report.verdict else 'no se cumple'}")
    print(f"⏱️ Tiempo: {report.wall_time * 1000:.1f}ms")


# ==================== SUBCOMANDOS ====================

def cmd_check(args: argparse.Namespace) -> int:
    if args.batch:
        return run_batch(args.batch, args.formula, args.oracle_cap)
    if not args.model:
        raise PtamcError("check necesita un modelo o --batch DIR")
    model_text = read_text(args.model)
    report = run_check(model_text, args.formula, args.at, args.oracle_cap)
    dot = export_dot(parse_model(model_text)) if args.emit_dot else None
    if args.json:
        document = report.to_dict()
        if dot is not None:
            document["dot"] = dot
        print(json.dumps(document, ensure_ascii=False, sort_keys=True))
    else:
        print_report(report)
        if dot is not None:
            print(dot, end="")
    return _verdict_code(report.verdict)


def _load_game(path: str) -> CountdownGame:
    game = parse_model(read_text(path))
    if not isinstance(game, CountdownGame):
        raise PtamcError(f"{path} no contiene un juego de cuenta atrás")
    return game


def cmd_solve_countdown(args: argparse.Namespace) -> int:
    game = _load_game(args.file)
    winner = solve_countdown(game, args.state, args.count)
    if args.json:
        print(json.dumps({"state": args.state, "count": args.count, "winner": winner}, sort_keys=True))
    else:
        mark = "🏆" if winner == PLAYER1 else "🛡️"
        print(f"{mark} Ganador desde ({args.state}, {args.count}): {winner}")
    return EXIT_OK if winner == PLAYER1 else EXIT_FALSE


def cmd_generate(args: argparse.Namespace) -> int:
    game = _load_game(args.file)
    if args.target == "countdown-to-tmdp":
        print(serialize_model(game_to_tmdp(game, args.state, args.count)), end="")
        return EXIT_OK
    translate = game_to_1cpta if args.target == "countdown-to-1cpta" else game_to_2cpta
    pta, f = translate(game, args.state, args.count)
    print(serialize_model(pta), end="")
    print(f"// fórmula: {format_formula(f)}")
    return EXIT_OK


def cmd_forward_reach(args: argparse.Namespace) -> int:
    pta = parse_model(read_text(args.file))
    if not isinstance(pta, Pta):
        raise PtamcError(f"{args.file} no contiene un PTA")
    fr = build_fr_mdp(pta)
    value = fr_reach_prob(pta, args.target, args.objective, fr)
    iso = check_isomorphic_fr_first(pta, fr)
    if args.json:
        document = {"objective": args.objective, "target": args.target, "probability": jsonable(value),
                    "states": len(fr), "isomorphic": iso.isomorphic}
        if args.emit_dot:
            document["dot"] = export_dot(fr)
        print(json.dumps(document, ensure_ascii=False, sort_keys=True))
        return EXIT_OK
    print(SEPARATOR)
    print(f"📈 FR[{pta.name}]: {len(fr)} estados")
    print(f"🎯 P{args.objective}(F {args.target}) = {jsonable(value)}")
    print(f"🔗 FR[P] ≅ 1st[P]: {'sí' if iso.isomorphic else 'no (' + str(iso.witness) + ')'}")
    print(SEPARATOR)
    if args.emit_dot:
        print(export_dot(fr), end="")
    return EXIT_OK


def cmd_oracle_check(args: argparse.Namespace) -> int:
    pta = parse_model(read_text(args.file))
    if not isinstance(pta, Pta):
        raise PtamcError(f"{args.file} no contiene un PTA")
    f = parse_formula(args.formula)
    at = _pta_at(pta, parse_at(args.at))
    cap = get_settings().with_overrides(oracle_cap=args.oracle_cap).oracle_cap
    verdict = oracle_check_ptctl(pta, f, at, cap=cap)
    if args.json:
        print(json.dumps({"engine": "oracle", "verdict": verdict}, sort_keys=True))
    else:
        print(f"⚠️ Aviso: {ORACLE_NOTICE}")
        print(f"{'✅' if verdict else '❌'} Veredicto del oráculo: {verdict}")
    return _verdict_code(verdict)


def cmd_export(args: argparse.Namespace) -> int:
    model = parse_model(read_text(args.file))
    if args.format == "dot":
        print(export_dot(model), end="")
    else:
        print(export_json(model))
    return EXIT_OK


# ==================== MODO POR LOTES ====================

def _batch_one(path: str, formula_text: str, oracle_cap: Optional[int]) -> Dict[str, Any]:
    row: Dict[str, Any] = {"archivo": os.path.basename(path), "motor": "", "clase": "",
                           "veredicto": None, "tiempo_ms": 0.0, "error": ""}
    try:
        report = run_check(read_text(path), formula_text, None, oracle_cap)
        row.update(motor=report.engine, clase=report.formula_class, veredicto=report.verdict,
                   tiempo_ms=round(report.wall_time * 1000, 3))
    except PtamcError as e:
        row["error"] = str(e)
        logger.error(f"Lote: {path}: {e}")
    return row


def run_batch(directory: str, formula_text: str, oracle_cap: Optional[int] = None) -> int:
    """
    Verifica en paralelo todos los modelos de un directorio con la misma fórmula.

    Cada archivo produce un informe aislado; el resumen se guarda en CSV (pandas) junto
    al archivo de registro.
    """
    if not os.path.isdir(directory):
        raise PtamcError(f"No es un directorio: {directory}")
    paths = sorted(os.path.join(directory, name) for name in os.listdir(directory)
                   if name.endswith(MODEL_SUFFIXES))
    if not paths:
        raise PtamcError(f"No hay modelos .ppta ni .ptmdp en {directory}")
    settings = get_settings()
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        rows = list(pool.map(lambda p: _batch_one(p, formula_text, oracle_cap), paths))

    pd = load_pandas()
    table = pd.DataFrame(rows)
    out_dir = os.path.dirname(settings.log_file) or "."
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "ptamc_batch.csv")
    table.to_csv(csv_path, index=False)

    print(SEPARATOR)
    print(f"📦 Lote: {len(rows)} modelos, fórmula {formula_text}")
    for row in rows:
        if row["error"]:
            print(f"   ❌ {row['archivo']}: {row['error']}")
        else:
            mark = "✅" if row["veredicto"] else "⛔"
            print(f"   {mark} {row['archivo']} [{row['motor']}] {row['tiempo_ms']}ms")
    print(f"💾 Resumen guardado en {csv_path}")
    print(SEPARATOR)

    if any(row["error"] for row in rows):
        return EXIT_ERROR
    return EXIT_OK if all(row["veredicto"] for row in rows) else EXIT_FALSE


# ==================== ARGUMENTOS ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptamc", description="Verificador de autómatas temporizados probabilistas")
    parser.add_argument("--version", action="version", version=f"ptamc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Verifica una fórmula sobre un PTA o un TMDP")
    check.add_argument("model", nargs="?", help="Modelo .ppta o .ptmdp")
    check.add_argument("--formula", required=True)
    check.add_argument("--at", help="Configuración l,v (o l,v1,v2); estado s para TMDPs")
    check.add_argument("--json", action="store_true")
    check.add_argument("--emit-dot", action="store_true")
    check.add_argument("--oracle-cap", type=int, help="Constante máxima del oráculo (PTAMC_ORACLE_CAP)")
    check.add_argument("--batch", metavar="DIR", help="Verifica todos los modelos de DIR en paralelo")
    check.set_defaults(handler=cmd_check)

    solve = sub.add_parser("solve-countdown", help="Resuelve un juego de cuenta atrás")
    solve.add_argument("file")
    solve.add_argument("--state", required=True)
    solve.add_argument("--count", type=int, required=True)
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(handler=cmd_solve_countdown)

    generate = sub.add_parser("generate", help="Traduce un juego de cuenta atrás a TMDP o PTA")
    generate.add_argument("target", choices=["countdown-to-tmdp", "countdown-to-1cpta", "countdown-to-2cpta"])
    generate.add_argument("file")
    generate.add_argument("--state", required=True)
    generate.add_argument("--count", type=int, required=True)
    generate.set_defaults(handler=cmd_generate)

    forward = sub.add_parser("forward-reach", help="Alcanzabilidad exacta sobre FR[P]")
    forward.add_argument("file")
    forward.add_argument("--target", required=True)
    forward.add_argument("--objective", choices=["max", "min"], default="max")
    forward.add_argument("--json", action="store_true")
    forward.add_argument("--emit-dot", action="store_true")
    forward.set_defaults(handler=cmd_forward_reach)

    oracle = sub.add_parser("oracle-check", help="Veredicto del oráculo de regiones")
    oracle.add_argument("file")
    oracle.add_argument("--formula", required=True)
    oracle.add_argument("--at", required=True)
    oracle.add_argument("--json", action="store_true")
    oracle.add_argument("--oracle-cap", type=int)
    oracle.set_defaults(handler=cmd_oracle_check)

    export = sub.add_parser("export", help="Exporta un modelo a DOT o JSON")
    export.add_argument("file")
    export.add_argument("--format", choices=["dot", "json"], default="dot")
    export.set_defaults(handler=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR
    setup_logging()
    try:
        return args.handler(args)
    except PtamcError as e:
        logger.error(f"{args.command}: {e}")
        print(f"❌ Error: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
