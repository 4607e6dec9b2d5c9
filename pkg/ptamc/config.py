"""
Configuración y registro de ptamc
---------------------------------

Centraliza la lectura de variables de entorno (con soporte para archivos .env mediante
python-dotenv), la configuración del registro en ./logs/ y la carga diferida de las
librerías pesadas que solo se usan en algunos comandos.

Dependencias:
    - python-dotenv: Carga de variables desde .env
    - logging: Registro en archivo con marcas de tiempo [%H:%M]
    - pandas / matplotlib: Se importan de forma lazy solo cuando se necesitan

Variables reconocidas:
    - PTAMC_ORACLE_CAP: Constante máxima admitida por el oráculo de regiones (128)
    - PTAMC_LOG_FILE: Archivo de registro (./logs/ptamc_log.txt)
    - PTAMC_LOG_LEVEL: Nivel de registro (INFO)
    - PTAMC_WORKERS: Hilos para el modo --batch (4)
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

# ==================== VALORES POR DEFECTO ====================

DEFAULT_ORACLE_CAP = 128
DEFAULT_LOG_FILE = "./logs/ptamc_log.txt"
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_WORKERS = 4

# Variables globales para lazy loading
pd = None
plt = None
_settings = None
_logging_ready = False


@dataclass(frozen=True)
class Settings:
    """
    Parámetros de ejecución del verificador.

    Atributos:
        oracle_cap: Constante máxima (tras escalar) aceptada por el oráculo
        log_file: Ruta del archivo de registro
        log_level: Nivel de registro del archivo
        workers: Número de hilos para --batch
    """

    oracle_cap: int = DEFAULT_ORACLE_CAP
    log_file: str = DEFAULT_LOG_FILE
    log_level: str = DEFAULT_LOG_LEVEL
    workers: int = DEFAULT_WORKERS

    def with_overrides(self, oracle_cap: Optional[int] = None, workers: Optional[int] = None) -> "Settings":
        """Devuelve una copia con los valores indicados por línea de comandos."""
        changes = {}
        if oracle_cap is not None:
            changes["oracle_cap"] = oracle_cap
        if workers is not None:
            changes["workers"] = workers
        return replace(self, **changes)


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"La variable {name} debe ser un entero, se recibió '{raw}'")
    if value <= 0:
        raise ValueError(f"La variable {name} debe ser positiva, se recibió {value}")
    return value


def get_settings(reload: bool = False) -> Settings:
    """
    Construye (una sola vez) la configuración a partir del entorno y de .env.
    """
    global _settings
    if _settings is None or reload:
        load_dotenv()
        _settings = Settings(
            oracle_cap=_int_from_env("PTAMC_ORACLE_CAP", DEFAULT_ORACLE_CAP),
            log_file=os.getenv("PTAMC_LOG_FILE", DEFAULT_LOG_FILE),
            log_level=os.getenv("PTAMC_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
            workers=_int_from_env("PTAMC_WORKERS", DEFAULT_WORKERS),
        )
    return _settings


# ==================== REGISTRO ====================

def setup_logging(settings: Optional[Settings] = None) -> logging.Logger:
    """
    Configura el logger raíz del paquete.

    - Archivo: settings.log_file (se crea la carpeta si no existe)
    - Formato: "[HH:MM] NIVEL módulo: mensaje"
    - Consola: solo advertencias y errores
    """
    global _logging_ready
    settings = settings or get_settings()
    root = logging.getLogger("ptamc")
    if _logging_ready:
        return root

    root.setLevel(logging.DEBUG)
    formatter = logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s", datefmt="[%H:%M]")

    log_dir = os.path.dirname(settings.log_file)
    try:
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(settings.log_file, encoding="utf-8")
        file_handler.setLevel(getattr(logging, settings.log_level, logging.INFO))
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
    except OSError as e:
        print(f"⚠️ No se pudo abrir el archivo de registro {settings.log_file}: {e}")

    console = logging.StreamHandler()
    console.setLevel(logging.WARNING)
    console.setFormatter(logging.Formatter("⚠️ %(message)s"))
    root.addHandler(console)

    _logging_ready = True
    return root


# ==================== CARGA DIFERIDA ====================

def load_pandas():
    """
    Carga pandas de forma lazy cuando se necesite (resúmenes de --batch).
    """
    global pd
    if pd is None:
        import pandas as pd_module
        pd = pd_module
    return pd


def load_matplotlib():
    """
    Carga matplotlib de forma lazy cuando se necesite (gráfica de escalado).
    """
    global plt
    if plt is None:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt_module
        plt = plt_module
    return plt
