#!/usr/bin/env python3
"""Plot rondeau-protocol results from a `rmdspin rondeau` output directory.

Top panel: stroboscopic magnetization <S^z>(4mT) for the main runs at the
configured g_tc (from magnetization.csv), with the survival threshold s_cr.
Bottom panel: lifetime in periods versus g_tc for every drive in the sweep
grid (from lifetimes.csv); censored points are drawn as open upward triangles
at the step cap.
"""

from __future__ import annotations

import argparse
import csv
import json
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("rondeau_dir", type=Path, help="output directory of `rmdspin rondeau`")
    parser.add_argument("--out", type=Path, default=None, help="output image path")
    args = parser.parse_args()

    s_cr = 0.25
    cap = None
    manifest_path = args.rondeau_dir / "manifest.json"
    if manifest_path.exists():
        cfg = json.loads(manifest_path.read_text()).get("config", {})
        s_cr = float(cfg.get("s_cr", s_cr))
        cap = int(cfg.get("rondeau_steps", 0)) or None

    series: dict[tuple[str, str], list[tuple[int, float]]] = defaultdict(list)
    with (args.rondeau_dir / "magnetization.csv").open(newline="") as handle:
        for row in csv.DictReader(handle):
            key = (row["drive"], row["g_tc"])
            series[key].append((int(row["step"]), float(row["magnetization_z"])))

    lifetimes: dict[str, list[tuple[float, float, bool]]] = defaultdict(list)
    with (args.rondeau_dir / "lifetimes.csv").open(newline="") as handle:
        for row in csv.DictReader(handle):
            censored = row["censored"].strip().lower() in ("1", "true")
            life = float(row["last_step"]) if censored else float(row["lifetime_periods"])
            lifetimes[row["drive"]].append((float(row["g_tc"]), life, censored))
    for rows in lifetimes.values():
        rows.sort()

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 7.2))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    color_of = {
        drive: colors[i % len(colors)]
        for i, drive in enumerate(sorted({d for d, _ in series} | set(lifetimes)))
    }

    for (drive, g_tc), rows in sorted(series.items()):
        rows.sort()
        steps = [s for s, _ in rows]
        mags = [m for _, m in rows]
        top.plot(steps, mags, lw=0.8, color=color_of[drive],
                 label=f"{drive} (g_tc={g_tc})")
    top.axhline(s_cr, color="k", ls=":", lw=1, label=r"$\pm s_{\mathrm{cr}}$")
    top.axhline(-s_cr, color="k", ls=":", lw=1)
    top.set_xlabel("step")
    top.set_ylabel(r"$\langle S^z\rangle(4mT)$")
    top.set_title("Stroboscopic magnetization (main runs)")
    top.legend(fontsize=8)
    top.grid(True, alpha=0.3)

    for drive, rows in sorted(lifetimes.items()):
        xs = [g for g, _, _ in rows]
        ys = [l for _, l, _ in rows]
        cens = [c for _, _, c in rows]
        bottom.plot(xs, ys, "-", lw=0.8, color=color_of[drive], alpha=0.5)
        bottom.scatter([x for x, c in zip(xs, cens) if not c],
                       [y for y, c in zip(ys, cens) if not c],
                       marker="o", color=color_of[drive], label=drive)
        if any(cens):
            bottom.scatter([x for x, c in zip(xs, cens) if c],
                           [y for y, c in zip(ys, cens) if c],
                           marker="^", facecolors="none", edgecolors=color_of[drive],
                           label=f"{drive} (censored)")
    if cap:
        bottom.axhline(cap, color="gray", ls="--", lw=1, label="step cap")
    bottom.set_yscale("log")
    bottom.set_xlabel(r"$g_{\mathrm{tc}}$")
    bottom.set_ylabel("lifetime (periods)")
    bottom.set_title("Rondeau lifetime vs drive strength")
    bottom.legend(fontsize=8)
    bottom.grid(True, which="both", alpha=0.3)

    fig.tight_layout()
    out = args.out or args.rondeau_dir / "rondeau.png"
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
