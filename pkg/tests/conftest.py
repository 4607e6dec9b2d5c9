"""
Fixtures compartidas de la batería de pruebas de ptamc.

Los modelos de ejemplo se leen de ./models; el registro se redirige a una carpeta
temporal para no escribir en ./logs durante las pruebas.
"""

import os
from fractions import Fraction
from pathlib import Path

import pytest

from ptamc.config import get_settings
from ptamc.dsl import parse_model
from ptamc.model import UntimedMdp

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"


def model_path(name: str) -> str:
    return str(MODELS_DIR / name)


def load_model(name: str):
    return parse_model((MODELS_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session", autouse=True)
def log_dir(tmp_path_factory):
    """Registro y resúmenes de lotes en una carpeta temporal."""
    folder = tmp_path_factory.mktemp("logs")
    os.environ["PTAMC_LOG_FILE"] = str(folder / "ptamc_log.txt")
    get_settings(reload=True)
    yield folder


@pytest.fixture
def fig1():
    """Protocolo de tres locaciones: init, wait y error."""
    return load_model("fig1.ppta")


@pytest.fixture
def rampa():
    return load_model("rampa.ppta")


@pytest.fixture
def cadena():
    return load_model("cadena.ptmdp")


@pytest.fixture
def juego():
    return load_model("juego.cdg")


@pytest.fixture
def reintento_mdp():
    """
    MDP con dos elecciones en s0: reintentar (2/5 meta, 2/5 s0, 1/5 fallo) o jugársela
    (1/2 meta, 1/2 fallo). Pmax(F meta) = 2/3 y Pmin(F meta) = 1/2.
    """
    keys = ["s0", "meta", "fallo"]
    choices = {
        "s0": [{"meta": Fraction(2, 5), "s0": Fraction(2, 5), "fallo": Fraction(1, 5)},
               {"meta": Fraction(1, 2), "fallo": Fraction(1, 2)}],
        "meta": [{"meta": 1}],
        "fallo": [{"fallo": 1}],
    }
    return UntimedMdp.from_keys(keys, "s0", choices, {"meta": ["meta"]})


@pytest.fixture
def dos_relojes():
    return load_model("dos_relojes.ppta")


@pytest.fixture
def models_dir():
    return MODELS_DIR
