#!/usr/bin/env python3
"""Plot scaling exponents vs energy density from `rmdspin phase-diagram`.

Reads phase_alpha.csv (fitted power-law exponent per drive and target energy
density epsilon) and draws alpha(epsilon) with error bars, one curve per
drive. Points where the fit failed (empty alpha) are skipped.
"""

from __future__ import annotations

import argparse
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("phase_dir", type=Path,
                        help="output directory of `rmdspin phase-diagram`")
    parser.add_argument("--out", type=Path, default=None, help="output image path")
    args = parser.parse_args()

    curves: dict[str, list[tuple[float, float, float]]] = defaultdict(list)
    with (args.phase_dir / "phase_alpha.csv").open(newline="") as handle:
        for row in csv.DictReader(handle):
            if not row["alpha"]:
                continue
            curves[row["drive"]].append(
                (float(row["epsilon"]), float(row["alpha"]),
                 float(row["alpha_stderr"] or 0.0))
            )
    for rows in curves.values():
        rows.sort()

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for drive, rows in sorted(curves.items()):
        xs = [e for e, _, _ in rows]
        ys = [a for _, a, _ in rows]
        es = [s for _, _, s in rows]
        ax.errorbar(xs, ys, yerr=es, fmt="o-", capsize=3, label=drive)

    ax.set_xlabel(r"energy density $\epsilon$")
    ax.set_ylabel(r"fitted exponent $\alpha$")
    ax.set_title("Scaling exponent across the energy landscape")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()

    out = args.out or args.phase_dir / "phase_diagram.png"
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
