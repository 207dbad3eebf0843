"""test unit for pillowcase_lens.py"""

import runtime_path  # isort:skip

import json
import os

import pytest

import pillowcase_lens
from core.errors import ConfigError
from core.intersect import IntersectionReport
from core.intersect import DoublePointCheck
from pillowcase_lens import *


def test_run_config_defaults():
    config = RunConfig("count", word="s b1 a1^-1").validate()
    assert config.epsilon == 0.1
    assert config.grid == DEFAULT_GRID
    assert str(config.mcg_word()) == "s b1 a1^-1"
    config = RunConfig("count", family="unknot-lens", p=3).validate()
    assert str(config.mcg_word()) == "Ta^3"


@pytest.mark.parametrize("changes", [
    {"command": "solve"},
    {"epsilon": 0.0},
    {"epsilon": 0.7},
    {"p": -1},
    {"grid": 16},
    {"seed": -3},
    {"formats": ("png",)},
    {"family": "trefoil"},
    {"word": None},
    {"suite": "everything"},
    {"samples": 0},
    {"threads": 0},
])
def test_run_config_errors(changes):
    config = RunConfig("count", word="Ta")._replace(**changes)
    with pytest.raises(ConfigError):
        config.validate()


def test_parse_errors_exit_1(tmp_path):
    out = str(tmp_path)
    assert main(["count", "--word", "Ta Tq", "--out", out]) == EXIT_CONFIG
    assert main(["count", "--epsilon", "0.9", "--word", "Ta",
                 "--out", out]) == EXIT_CONFIG
    assert main(["count", "--family", "figure-eight"]) == EXIT_CONFIG
    assert main(["count", "--word", "Ta", "--family", "trefoil"]) == \
        EXIT_CONFIG
    assert main(["frobnicate"]) == EXIT_CONFIG


def test_verify_mcg():
    assert main(["verify", "mcg", "--samples", "20", "-q"]) == EXIT_OK


def test_verify_traces():
    assert main(["verify", "traces", "--samples", "200", "-q"]) == EXIT_OK


def test_verify_cohomology(capsys):
    assert main(["verify", "cohomology", "--samples", "3", "-q"]) == EXIT_OK
    assert "all checks passed" in capsys.readouterr().out


def test_plot_writes_curves(tmp_path, capsys):
    out = str(tmp_path)
    assert main(["plot", "--out", out, "--reproducible", "-q"]) == EXIT_OK
    assert os.path.isfile(os.path.join(out, "lagrangians.svg"))
    assert os.path.isfile(os.path.join(out, "lagrangians.csv"))
    assert "degenerate" not in capsys.readouterr().out


def test_count_trefoil(tmp_path, capsys):
    out = str(tmp_path)
    code = main(["count", "--word", "s b1 a1^-1", "--grid", "64",
                 "--format", "json,csv", "--out", out, "-q"])
    assert code == EXIT_OK
    assert "count: 3" in capsys.readouterr().out
    with open(os.path.join(out, "count.json")) as f:
        data = json.load(f)
    assert data["count"] == 3
    assert data["provenance"]["seed"] == 0
    assert not os.path.exists(os.path.join(out, "count.svg"))


def test_count_double_point_exits_2(tmp_path):
    code = main(["count", "--family", "unknot-lens", "--p", "4",
                 "--grid", "64", "--format", "json", "--out",
                 str(tmp_path), "-q"])
    assert code == EXIT_FLAGGED


def test_count_against_family(tmp_path, capsys, monkeypatch):
    empty = IntersectionReport([], set(), {"word": "a1^-1 Ta^2"}, 0,
                               DoublePointCheck(False, None, 1.0))
    monkeypatch.setattr(pillowcase_lens, "solve", lambda prob: empty)
    code = main(["count", "--family", "simple-lens", "--p", "2",
                 "--format", "csv", "--out", str(tmp_path), "-q"])
    assert code == EXIT_FLAGGED
    out = capsys.readouterr().out
    assert "expected: 2" in out
    assert "sites: MISMATCH" in out


def test_count_simple_lens_sites(tmp_path, capsys):
    code = main(["count", "--word", "a1^-1 Ta^2", "--grid", "64",
                 "--format", "csv", "--out", str(tmp_path), "-q"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "count: 2" in out
    assert "sites: match" in out


def test_count_output_is_deterministic(tmp_path):
    outputs = []
    for run in ("first", "second"):
        out = tmp_path / run
        out.mkdir()
        assert main(["count", "--family", "simple-lens", "--p", "2",
                     "--grid", "64", "--format", "csv,json",
                     "--out", str(out), "-q"]) == EXIT_OK
        outputs.append([(out / name).read_bytes()
                        for name in ("count.csv", "count.json")])
    assert outputs[0] == outputs[1]
