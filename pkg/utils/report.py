"""CSV, JSON and SVG writers for intersection reports and curves."""

import csv
import json
import logging
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from core.char_variety import Chart  # noqa: E402
from core.lagrangians import PerturbationConfig  # noqa: E402

LOGGER = logging.getLogger(__name__)

SCHEMA = 1
HASH_SALT = "pillowcase-lens"
FORMATS = ("csv", "svg", "json")

POINT_COLUMNS = ["chart", "alpha", "beta", "gamma",
                 "ahat_x", "ahat_y", "ahat_z", "bhat_x", "bhat_y", "bhat_z",
                 "chi", "psi", "phi", "theta", "residual", "transverse"]

CURVE_COLUMNS = ["curve", "index", "alpha", "beta"]


def _fmt(x):
    return "" if x is None else repr(float(x))


def point_row(pt):
    chart = pt.chart
    row = dict.fromkeys(POINT_COLUMNS, "")
    row["chart"] = chart.chart.value
    if chart.chart is Chart.P3:
        row["alpha"] = _fmt(chart.alpha)
        row["beta"] = _fmt(chart.beta)
        row["gamma"] = _fmt(chart.gamma)
    else:
        for i, axis in enumerate("xyz"):
            row["ahat_" + axis] = _fmt(chart.a_hat[i])
            row["bhat_" + axis] = _fmt(chart.b_hat[i])
    row["chi"] = _fmt(pt.disk.chi)
    row["psi"] = _fmt(pt.disk.psi)
    row["phi"] = _fmt(pt.sphere.phi)
    row["theta"] = _fmt(pt.sphere.theta)
    row["residual"] = _fmt(pt.residual)
    row["transverse"] = pt.transverse.value
    return row


def write_csv(path, rows, fieldnames):
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames,
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    LOGGER.info("wrote %d rows to %s", len(rows), path)
    return path


def write_points_csv(path, report):
    return write_csv(path, [point_row(pt) for pt in report.points],
                     POINT_COLUMNS)


def _chart_dict(chart):
    if chart.chart is Chart.P3:
        return {"chart": "P3", "alpha": float(chart.alpha),
                "beta": float(chart.beta), "gamma": float(chart.gamma)}
    return {"chart": "P4", "a_hat": [float(x) for x in chart.a_hat],
            "b_hat": [float(x) for x in chart.b_hat]}


def report_dict(report, seed=None):
    points = []
    for pt in report.points:
        item = {"disk": {"chi": float(pt.disk.chi),
                         "psi": float(pt.disk.psi)},
                "sphere": {"phi": float(pt.sphere.phi),
                           "theta": float(pt.sphere.theta)},
                "chart": _chart_dict(pt.chart),
                "residual": float(pt.residual),
                "transverse": pt.transverse.value,
                "near_double_point": bool(pt.near_double_point)}
        if pt.witness is not None:
            item["witness"] = bool(pt.witness.matches)
        points.append(item)
    provenance = dict(report.provenance)
    if seed is not None:
        provenance["seed"] = int(seed)
    return {"schema": SCHEMA,
            "count": report.count,
            "flags": sorted(flag.value for flag in report.flags),
            "dropped_seeds": int(report.dropped_seeds),
            "double_point_check": {
                "hit": bool(report.double_point.hit),
                "residual": float(report.double_point.residual)},
            "provenance": provenance,
            "points": points}


def write_json(path, data):
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    LOGGER.info("wrote %s", path)
    return path


# --- figures ---------------------------------------------------------------

def lagrangian_curves(p=PerturbationConfig(), samples=361):
    """L_s in P3 as the arcs (phi +- pi/2, nu(phi)) and L_d as beta = 0."""
    phi = np.linspace(0.0, np.pi, samples)
    nu = p.nu(phi)
    alpha = np.linspace(0.0, np.pi, samples)
    return {"Ls+": (phi + np.pi / 2.0, nu),
            "Ls-": (phi - np.pi / 2.0, nu),
            "Ld": (alpha, np.zeros_like(alpha))}


def curve_rows(curves):
    rows = []
    for name in sorted(curves):
        alpha, beta = curves[name]
        for i, (x, y) in enumerate(zip(alpha, beta)):
            rows.append({"curve": name, "index": i, "alpha": _fmt(x),
                         "beta": _fmt(y)})
    return rows


def is_degenerate(curves, tol=1e-12):
    """True when the L_s arcs lie on beta = 0."""
    return all(np.max(np.abs(curves[k][1])) < tol for k in ("Ls+", "Ls-"))


def save_svg(fig, path, reproducible=False):
    if reproducible:
        with plt.rc_context({"svg.hashsalt": HASH_SALT}):
            fig.savefig(path, format="svg", metadata={"Date": None})
    else:
        fig.savefig(path, format="svg")
    plt.close(fig)
    LOGGER.info("wrote %s", path)
    return path


def plot_lagrangians(path, p=PerturbationConfig(), reproducible=False):
    curves = lagrangian_curves(p)
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, style in (("Ls+", "C0-"), ("Ls-", "C0-"), ("Ld", "C1-")):
        alpha, beta = curves[name]
        ax.plot(alpha, beta, style, lw=1.2,
                label=None if name == "Ls-" else name[:2])
    ax.plot([np.pi / 2.0], [0.0], "ko", ms=4)
    ax.set_xlabel("alpha")
    ax.set_ylabel("beta")
    ax.set_title("epsilon = %g" % p.epsilon)
    ax.legend(loc="upper right")
    save_svg(fig, path, reproducible)
    return curves


def torus_angles(chart):
    """(angle a_hat, angle b_hat) of a P4 point in [0, 2 pi)."""
    a, b = chart.a_hat, chart.b_hat
    two_pi = 2.0 * np.pi
    return (float(np.mod(np.arctan2(a[1], a[0]), two_pi)),
            float(np.mod(np.arctan2(b[1], b[0]), two_pi)))


def plot_report(path, report, p=PerturbationConfig(), reproducible=False):
    """P3 points in the pillowcase rectangle, P4 points in the torus
    square next to the diagonal."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4.5))
    curves = lagrangian_curves(p)
    for name in ("Ls+", "Ls-"):
        left.plot(*curves[name], "C0-", lw=0.8)
    left.plot(*curves["Ld"], "C1-", lw=0.8)
    two_pi = 2.0 * np.pi
    right.plot([0.0, two_pi], [0.0, two_pi], "k--", lw=0.8)
    for pt in report.points:
        color = "C3" if pt.near_double_point else "k"
        if pt.chart.chart is Chart.P3:
            left.plot(pt.chart.alpha, pt.chart.beta, "o", color=color, ms=4)
            left.annotate("%.3f" % pt.chart.gamma,
                          (pt.chart.alpha, pt.chart.beta), fontsize=7,
                          xytext=(3, 3), textcoords="offset points")
        else:
            x, y = torus_angles(pt.chart)
            right.plot(x, y, "o", color=color, ms=4)
    left.set_xlabel("alpha")
    left.set_ylabel("beta")
    left.set_title("P3")
    right.set_xlim(0.0, two_pi)
    right.set_ylim(0.0, two_pi)
    right.set_aspect("equal")
    right.set_xlabel("angle a_hat")
    right.set_ylabel("angle b_hat")
    right.set_title("P4")
    fig.suptitle("%s: %d points" % (report.provenance.get("word") or "1",
                                    report.count))
    return save_svg(fig, path, reproducible)


def output_path(out_dir, stem, fmt):
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, "%s.%s" % (stem, fmt))
