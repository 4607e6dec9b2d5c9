"""
Script de prueba de rendimiento - Escalado de los motores
---------------------------------------------------------

Comprueba que el tiempo del motor PTCTL de un reloj no depende de la magnitud de las
constantes: un PTA fijo de 10 locaciones se reescala de constantes ~10³ a ~10⁶ y el
tiempo debería cambiar menos de 2×. El oráculo de regiones, exponencial en las
constantes, solo se mide sobre el modelo sin escalar como referencia.

Funcionalidades:
- Mide el tiempo de verificación con cada factor de escala
- Muestra el tamaño del TMDP reducido y el número de intervalos del resultado
- Analiza el pico de memoria con memory_profiler y la memoria residente con psutil
- Guarda una gráfica de escalado (matplotlib) en la carpeta del registro

Uso:
    python performance_test.py
    python performance_test.py --repeticiones 5
"""

import argparse
import os
import random
import time
from fractions import Fraction

import psutil
from memory_profiler import memory_usage

from ptamc.config import get_settings, load_matplotlib
from ptamc.formula import ProbUntil, TRUE, Atom, Timing
from ptamc.generators import random_1c_pta
from ptamc.ptctl1c import check_ptctl01_noneq_1c
from ptamc.regions import oracle_check_ptctl, scale_formula, scale_pta

SEED = 20240617
LOCATIONS = 10
SCALES = (200, 2000, 20000, 200000)
MAX_RATIO = 2.0


def fixed_pta():
    """PTA aleatorio con semilla y exactamente 10 locaciones (constantes <= 5)."""
    rng = random.Random(SEED)
    while True:
        pta = random_1c_pta(rng, max_locations=LOCATIONS, max_constant=5, name="escalado")
        if len(pta.locations) == LOCATIONS:
            return pta


def measure(description, func, *args):
    """
    Ejecuta func(*args) y devuelve (resultado, milisegundos, pico de memoria en MB).
    """
    start_time = time.perf_counter()
    peak, result = memory_usage((func, args), max_usage=True, retval=True, interval=0.01)
    elapsed = (time.perf_counter() - start_time) * 1000
    print(f"   ✅ {description}: {elapsed:.2f}ms, pico {peak:.1f} MB")
    return result, elapsed, peak


def run_scaling(pta, formula, repetitions):
    print("\n🟢 ESCALADO DEL MOTOR ptctl1c")
    print("=" * 60)
    rows = []
    for q in SCALES:
        scaled, f = scale_pta(pta, q), scale_formula(formula, q)
        times = []
        for _ in range(repetitions):
            result, elapsed, peak = measure(f"Constante máxima {scaled.max_constant()}",
                                            check_ptctl01_noneq_1c, scaled, f)
            times.append(elapsed)
        rows.append({"escala": q, "constante": scaled.max_constant(), "ms": min(times), "pico_mb": peak,
                     "estados_tr": result.stats.get("reduced_states", 0),
                     "intervalos": result.stats.get("intervals", 0)})
    return rows


def run_oracle_reference(pta, formula):
    print("\n🔴 ORÁCULO DE REGIONES (solo sin escalar)")
    print("=" * 60)
    _, elapsed, _ = measure("Oráculo en (l̄, 0)", oracle_check_ptctl, pta, formula, (pta.initial, 0))
    return elapsed


def plot(rows, path):
    plt = load_matplotlib()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot([r["constante"] for r in rows], [r["ms"] for r in rows], marker="o", label="ptctl1c")
    ax.set_xscale("log")
    ax.set_xlabel("Constante máxima")
    ax.set_ylabel("Tiempo (ms)")
    ax.set_ylim(bottom=0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    print(f"\n💾 Gráfica guardada en {path}")


def main():
    parser = argparse.ArgumentParser(description="Escalado de los motores de ptamc")
    parser.add_argument("--repeticiones", type=int, default=3, help="Se toma el mejor tiempo")
    args = parser.parse_args()

    print("🚀 PRUEBA DE RENDIMIENTO - ESCALADO DE LAS CONSTANTES")
    print("=" * 80)
    process = psutil.Process()
    memory_before = process.memory_info().rss / 1024 / 1024
    print(f"Memoria inicial: {memory_before:.2f} MB")

    pta = fixed_pta()
    target = next((a for l in pta.locations for a in sorted(pta.labels_of(l))), "a")
    formula = ProbUntil(">", Fraction(0), TRUE, Atom(target), Timing("<=", 4))
    print(f"PTA de {len(pta.locations)} locaciones y {len(pta.edges)} aristas, fórmula P>0(F<=4 {target})")

    rows = run_scaling(pta, formula, args.repeticiones)
    oracle_time = run_oracle_reference(pta, formula)
    memory_after = process.memory_info().rss / 1024 / 1024

    print("\n📊 RESUMEN")
    print("=" * 60)
    for row in rows:
        print(f"   • ×{row['escala']:>6} (c={row['constante']:>7}): {row['ms']:.1f}ms, "
              f"{row['estados_tr']} estados en T^r, {row['intervalos']} intervalos")
    ratio = rows[-1]["ms"] / rows[0]["ms"] if rows[0]["ms"] else float("inf")
    mark = "✅" if ratio < MAX_RATIO else "❌"
    print(f"\n{mark} Cociente de tiempos ×{SCALES[-1]} / ×{SCALES[0]}: {ratio:.2f} (límite {MAX_RATIO})")
    print(f"🔴 Oráculo sin escalar: {oracle_time:.1f}ms")
    print(f"💾 Incremento total de memoria: {memory_after - memory_before:.2f} MB")

    out_dir = os.path.dirname(get_settings().log_file) or "."
    os.makedirs(out_dir, exist_ok=True)
    plot(rows, os.path.join(out_dir, "escalado.png"))


if __name__ == "__main__":
    main()
