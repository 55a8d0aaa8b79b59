#!/usr/bin/env python3
"""Plot finite-size dependence of thermalization times.

Reads finite_size.csv from a `rmdspin finite-size` output directory and draws
mean tau versus linear lattice size N, one curve per (drive, 1/T) pair.
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
    parser.add_argument("fs_dir", type=Path, help="output directory of `rmdspin finite-size`")
    parser.add_argument("--out", type=Path, default=None, help="output image path")
    args = parser.parse_args()

    curves: dict[tuple[str, str], list[tuple[int, float, float]]] = defaultdict(list)
    with (args.fs_dir / "finite_size.csv").open(newline="") as handle:
        for row in csv.DictReader(handle):
            if int(row["n_used"]) == 0:
                continue
            curves[(row["drive"], row["inv_T"])].append(
                (int(row["n_linear"]), float(row["tau_mean"]), float(row["tau_stderr"]))
            )
    for rows in curves.values():
        rows.sort()

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for (drive, inv_t), rows in sorted(curves.items()):
        xs = [n for n, _, _ in rows]
        ys = [t for _, t, _ in rows]
        es = [e for _, _, e in rows]
        ax.errorbar(xs, ys, yerr=es, fmt="o-", capsize=3,
                    label=f"{drive}, 1/T={inv_t}")

    ax.set_xlabel("linear size $N$")
    ax.set_ylabel(r"$\tau_{\mathrm{th}}$ (steps)")
    ax.set_title("Finite-size dependence of the thermalization time")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()

    out = args.out or args.fs_dir / "finite_size.png"
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
