import json
import shutil
from fractions import Fraction

import pandas as pd
import pytest

from ptamc.cli import EXIT_ERROR, EXIT_FALSE, EXIT_OK, ORACLE_NOTICE, main, parse_at
from ptamc.dsl import parse_model
from ptamc.errors import PtamcError
from ptamc.model import Pta


def _path(models_dir, name):
    return str(models_dir / name)


# ==================== CHECK ====================

def test_check_exit_codes(models_dir):
    fig1 = _path(models_dir, "fig1.ppta")
    assert main(["check", fig1, "--formula", 'P{>0}[ F[<=9] "error" ]', "--at", "init,0"]) == EXIT_OK
    assert main(["check", fig1, "--formula", 'P{>0}[ F[<=4] "error" ]', "--at", "init,0"]) == EXIT_FALSE


def test_check_json_document(models_dir, capsys):
    code = main(["check", _path(models_dir, "fig1.ppta"), "--formula", 'P{>0}[ F[<=9] "error" ]', "--json"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert document["engine"] == "ptctl1c"
    assert document["formula_class"] == "PTCTL01_NONPUNCTUAL"
    assert document["verdict"] is True
    assert "wall_time" not in document
    assert document["notices"] == []
    assert set(document["digests"]) == {"model", "formula"}


def test_check_json_is_stable(models_dir, capsys):
    args = ["check", _path(models_dir, "rampa.ppta"), "--formula", 'P{>0}[ F "goal" ]', "--json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    assert json.loads(first)["sat_map"] == {"a": ["[0;5]"], "b": ["[0;1]"]}


def test_quantitative_formula_uses_oracle(models_dir, capsys):
    code = main(["check", _path(models_dir, "fig1.ppta"), "--formula", 'P{<0.1}[ F[<=6] "error" ]', "--json"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_FALSE
    assert document["engine"] == "oracle"
    assert document["notices"] == [ORACLE_NOTICE]


def test_check_tmdp(models_dir):
    cadena = _path(models_dir, "cadena.ptmdp")
    assert main(["check", cadena, "--formula", 'P{>0}[ F[<=2] "meta" ]']) == EXIT_OK
    assert main(["check", cadena, "--formula", 'P{>0}[ F[<=1] "meta" ]']) == EXIT_FALSE
    assert main(["check", cadena, "--formula", 'P{>0}[ F[<=0] "meta" ]', "--at", "s1"]) == EXIT_OK


def test_check_with_dot(models_dir, capsys):
    main(["check", _path(models_dir, "fig1.ppta"), "--formula", 'P{>=1}[ F "error" ]', "--emit-dot"])
    out = capsys.readouterr().out
    assert "digraph" in out
    assert "Veredicto: se cumple" in out


@pytest.mark.parametrize("argv", [
    ["check", "models/fig1.ppta", "--formula", 'P{>0}[ F "error" '],
    ["check", "no_existe.ppta", "--formula", 'P{>0}[ F "error" ]'],
    ["check", "models/fig1.ppta", "--formula", 'P{>0}[ F "error" ]', "--at", "init,3"],
    ["check", "models/cadena.ptmdp", "--formula", 'P{<1}[ F[=2] "meta" ]'],
    ["solve-countdown"],
])
def test_usage_errors(models_dir, argv):
    argv = [a.replace("models/", str(models_dir) + "/") for a in argv]
    assert main(argv) == EXIT_ERROR


def test_version():
    assert main(["--version"]) == EXIT_OK


def test_parse_at():
    assert parse_at("wait,7/2") == ("wait", Fraction(7, 2))
    assert parse_at("s1") == ("s1", None)
    assert parse_at("l,1,2")[1] == (1, 2)
    with pytest.raises(PtamcError):
        parse_at("l,x")


# ==================== OTROS SUBCOMANDOS ====================

def test_solve_countdown(models_dir, capsys):
    juego = _path(models_dir, "juego.cdg")
    assert main(["solve-countdown", juego, "--state", "s", "--count", "5"]) == EXIT_OK
    capsys.readouterr()
    assert main(["solve-countdown", juego, "--state", "s", "--count", "1", "--json"]) == EXIT_FALSE
    assert json.loads(capsys.readouterr().out)["winner"] == "player2"


def test_generate_one_clock_pta(models_dir, capsys):
    code = main(["generate", "countdown-to-1cpta", _path(models_dir, "juego.cdg"), "--state", "s", "--count", "2"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "// fórmula:" in out
    pta = parse_model(out)
    assert isinstance(pta, Pta)
    assert len(pta.locations) == 6


def test_forward_reach(models_dir, capsys):
    code = main(["forward-reach", _path(models_dir, "fig1.ppta"), "--target", "error",
                 "--objective", "min", "--json"])
    document = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert document["probability"] == "1"
    assert document["states"] == 5
    assert document["isomorphic"] is True


def test_oracle_check(models_dir, capsys):
    rampa = _path(models_dir, "rampa.ppta")
    assert main(["oracle-check", rampa, "--formula", 'P{>0}[ F[<=1] "goal" ]', "--at", "a,4"]) == EXIT_OK
    assert ORACLE_NOTICE in capsys.readouterr().out
    assert main(["oracle-check", rampa, "--formula", 'P{>0}[ F[<=1] "goal" ]', "--at", "a,7/2"]) == EXIT_FALSE


def test_export_json(models_dir, capsys):
    assert main(["export", _path(models_dir, "cadena.ptmdp"), "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["kind"] == "tmdp"


# ==================== LOTES ====================

def test_batch_summary(models_dir, tmp_path, log_dir):
    for name in ("fig1.ppta", "cadena.ptmdp", "juego.cdg"):
        shutil.copy(models_dir / name, tmp_path / name)
    code = main(["check", "--batch", str(tmp_path), "--formula", 'P{>=1}[ F "error" ]'])
    assert code == EXIT_FALSE
    table = pd.read_csv(log_dir / "ptamc_batch.csv")
    assert list(table["archivo"]) == ["cadena.ptmdp", "fig1.ppta"]
    assert list(table["motor"]) == ["mdp", "interval"]
    assert list(table["veredicto"]) == [False, True]


def test_batch_needs_models(tmp_path):
    assert main(["check", "--batch", str(tmp_path), "--formula", 'P{>0}[ F "a" ]']) == EXIT_ERROR
