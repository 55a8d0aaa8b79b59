#!/usr/bin/env python3
"""Plot a single trajectory recorded by `rmdspin simulate`.

Reads trajectory.csv and draws two panels: lattice observables (energy
density, staggered magnetization, uniform magnetization) and, when present,
the twin-trajectory decorrelator with its saturation value sqrt(2).
"""

from __future__ import annotations

import argparse
import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("run_dir", type=Path, help="output directory of `rmdspin simulate`")
    parser.add_argument("--out", type=Path, default=None, help="output image path")
    args = parser.parse_args()

    steps: list[int] = []
    columns: dict[str, list[float]] = {
        "energy_ave_density": [],
        "staggered_m": [],
        "magnetization_z": [],
    }
    decorrelator: list[float] = []
    with (args.run_dir / "trajectory.csv").open(newline="") as handle:
        for row in csv.DictReader(handle):
            steps.append(int(row["step"]))
            for key, series in columns.items():
                series.append(float(row[key]))
            if row.get("decorrelator"):
                decorrelator.append(float(row["decorrelator"]))

    has_decorrelator = len(decorrelator) == len(steps) and decorrelator
    n_panels = 2 if has_decorrelator else 1
    fig, axes = plt.subplots(n_panels, 1, figsize=(6.4, 3.6 * n_panels), squeeze=False)

    top = axes[0][0]
    labels = {
        "energy_ave_density": r"$\epsilon$",
        "staggered_m": r"$m_s$",
        "magnetization_z": r"$\langle S^z\rangle$",
    }
    for key, series in columns.items():
        top.plot(steps, series, lw=0.8, label=labels[key])
    top.set_xlabel("step")
    top.set_ylabel("observable")
    top.legend(fontsize=8)
    top.grid(True, alpha=0.3)

    if has_decorrelator:
        bottom = axes[1][0]
        bottom.plot(steps, decorrelator, lw=0.8, color="tab:red")
        bottom.axhline(math.sqrt(2.0), color="k", ls=":", lw=1, label=r"$\sqrt{2}$")
        bottom.set_xlabel("step")
        bottom.set_ylabel("decorrelator $d$")
        bottom.legend(fontsize=8)
        bottom.grid(True, alpha=0.3)

    fig.tight_layout()
    out = args.out or args.run_dir / "trajectory.png"
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
