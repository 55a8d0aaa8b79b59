#!/usr/bin/env python3
"""Plot thermalization times from a `rmdspin sweep` output directory.

Reads points.csv (mean tau per drive and frequency), fits.json (fitted
models), and manifest.json (for the transverse-field value used by the
log-squared model). Produces a log-linear tau vs 1/T figure with the fitted
curves overlaid.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load_points(path: Path) -> dict[str, list[tuple[float, float, float]]]:
    by_drive: dict[str, list[tuple[float, float, float]]] = defaultdict(list)
    with path.open(newline="") as handle:
        for row in csv.DictReader(handle):
            if int(row["n_used"]) == 0:
                continue
            by_drive[row["drive"]].append(
                (float(row["inv_T"]), float(row["tau_mean"]), float(row["tau_stderr"]))
            )
    for rows in by_drive.values():
        rows.sort()
    return by_drive


def effective_g(manifest_path: Path) -> float:
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
        cfg = manifest.get("config", {})
        return float(cfg.get("g", 0.9045)) * float(cfg.get("field_scale", 1.0))
    return 0.9045


def fit_curve(model: dict, x: np.ndarray, g: float) -> np.ndarray:
    c, a = model["prefactor"], model["exponent"]
    kind = model["model"]
    if kind == "power_law":
        return c * x**a
    if kind == "exponential":
        return c * np.exp(a * x)
    if kind == "log_squared":
        return c * np.exp(a * np.log(x / g) ** 2)
    raise ValueError(f"unknown model {kind!r}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("sweep_dir", type=Path, help="output directory of `rmdspin sweep`")
    parser.add_argument("--out", type=Path, default=None, help="output image path")
    parser.add_argument(
        "--all-fits",
        action="store_true",
        help="overlay every fitted model instead of only the preferred one",
    )
    args = parser.parse_args()

    points = load_points(args.sweep_dir / "points.csv")
    fits = json.loads((args.sweep_dir / "fits.json").read_text()).get("drives", {})
    g = effective_g(args.sweep_dir / "manifest.json")

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    styles = {"power_law": "--", "exponential": "-", "log_squared": ":"}

    for idx, (drive, rows) in enumerate(sorted(points.items())):
        color = colors[idx % len(colors)]
        xs = np.array([r[0] for r in rows])
        ys = np.array([r[1] for r in rows])
        es = np.array([r[2] for r in rows])
        ax.errorbar(xs, ys, yerr=es, fmt="o", color=color, label=drive, capsize=3)

        entry = fits.get(drive, {})
        preferred = entry.get("preferred_model")
        dense = np.linspace(xs.min(), xs.max(), 200)
        for key in ("power_law", "exponential", "log_squared"):
            model = entry.get(key)
            if model is None or (not args.all_fits and key != preferred):
                continue
            label = None
            if key == "power_law":
                label = f"{drive}: $\\alpha$={model['exponent']:.2f}"
            ax.plot(dense, fit_curve(model, dense, g), styles[key], color=color,
                    alpha=0.7, label=label)

    ax.set_yscale("log")
    ax.set_xlabel(r"$1/T$")
    ax.set_ylabel(r"$\tau_{\mathrm{th}}$ (steps)")
    ax.set_title("Thermalization time vs drive frequency")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()

    out = args.out or args.sweep_dir / "sweep.png"
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
