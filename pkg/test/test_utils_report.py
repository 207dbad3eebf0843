"""test unit for utils/report.py"""

import runtime_path  # isort:skip

import csv
import json

import numpy as np
import pytest

from core.char_variety import Chart
from core.char_variety import ChartPoint
from core.intersect import IntersectionPoint
from core.intersect import IntersectionReport
from core.intersect import DoublePointCheck
from core.intersect import Verdict
from core.lagrangians import DiskCoord
from core.lagrangians import PerturbationConfig
from core.lagrangians import SphereCoord
from utils.report import *


@pytest.fixture
def report():
    p3 = IntersectionPoint(
        DiskCoord(0.5, 0.2), SphereCoord(1.0, 0.0),
        ChartPoint(Chart.P3, alpha=2.0, beta=0.1, gamma=0.3), 1e-12,
        Verdict.YES, False)
    p4 = IntersectionPoint(
        DiskCoord(1.5, -0.2), SphereCoord(1.2, 1.0),
        ChartPoint(Chart.P4, a_hat=np.array([1.0, 0.0, 0.0]),
                   b_hat=np.array([0.0, 1.0, 0.0])), 2e-12,
        Verdict.INDETERMINATE, True)
    provenance = {"word": "s b1 a1^-1", "epsilon": 0.1, "grid": 64}
    return IntersectionReport([p3, p4], set(), provenance, 1,
                              DoublePointCheck(False, None, 0.4))


def test_point_rows(report):
    rows = [point_row(pt) for pt in report.points]
    assert set(rows[0]) == set(POINT_COLUMNS)
    assert rows[0]["chart"] == "P3" and rows[0]["ahat_x"] == ""
    assert float(rows[0]["gamma"]) == 0.3
    assert rows[1]["chart"] == "P4" and rows[1]["alpha"] == ""
    assert float(rows[1]["bhat_y"]) == 1.0
    assert rows[1]["transverse"] == "Indeterminate"


def test_write_points_csv(report, tmp_path):
    path = write_points_csv(str(tmp_path / "count.csv"), report)
    with open(path) as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 2
    assert list(rows[0]) == POINT_COLUMNS
    assert float(rows[1]["chi"]) == 1.5


def test_write_json(report, tmp_path):
    path = write_json(str(tmp_path / "count.json"),
                      report_dict(report, seed=7))
    with open(path) as f:
        data = json.load(f)
    assert data["schema"] == SCHEMA
    assert data["count"] == 2
    assert data["flags"] == []
    assert data["dropped_seeds"] == 1
    assert data["provenance"]["seed"] == 7
    assert data["points"][1]["chart"]["b_hat"] == [0.0, 1.0, 0.0]
    assert data["points"][1]["near_double_point"] is True


def test_lagrangian_curves():
    curves = lagrangian_curves(PerturbationConfig(0.1), samples=11)
    assert set(curves) == {"Ls+", "Ls-", "Ld"}
    alpha, beta = curves["Ls+"]
    assert np.allclose(alpha[0], np.pi / 2.0)
    assert np.allclose(beta[5], 0.1)
    assert not is_degenerate(curves)
    assert is_degenerate(lagrangian_curves(PerturbationConfig(0.0)))
    rows = curve_rows(curves)
    assert len(rows) == 33
    assert set(rows[0]) == set(CURVE_COLUMNS)


def test_torus_angles(report):
    assert np.allclose(torus_angles(report.points[1].chart),
                       (0.0, np.pi / 2.0))


def test_reproducible_svg(report, tmp_path):
    p = PerturbationConfig(0.1)
    first = plot_report(str(tmp_path / "a.svg"), report, p, True)
    second = plot_report(str(tmp_path / "b.svg"), report, p, True)
    with open(first, "rb") as f, open(second, "rb") as g:
        assert f.read() == g.read()
    plot_lagrangians(str(tmp_path / "c.svg"), p, True)
    with open(str(tmp_path / "c.svg")) as f:
        assert "<svg" in f.read()


def test_output_path(tmp_path):
    path = output_path(str(tmp_path / "nested" / "dir"), "count", "json")
    assert path.endswith("count.json")
    assert (tmp_path / "nested" / "dir").is_dir()
