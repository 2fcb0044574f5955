#!/usr/bin/env python3
"""Plots a sweep CSV produced by `fblbounds sweep`.

Example:
    fblbounds sweep --axis blocklength --grid 17:128 --k 16 --out fig3a.csv
    python3 tools/plot_sweep.py fig3a.csv fig3a.png
"""

import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__)
        return 1
    csv_path = sys.argv[1]
    out_path = sys.argv[2] if len(sys.argv) > 2 else csv_path + ".png"

    with open(csv_path, newline="") as fh:
        rows = [r for r in csv.DictReader(fh)]
    feasible = [r for r in rows if r["feasible"] == "1"]
    if not feasible:
        print("no feasible rows to plot")
        return 1

    x = [float(r["axis_value"]) for r in feasible]
    lb = [float(r["log10_pcon_lb"]) for r in feasible]
    ub = [float(r["log10_pcon_ub"]) for r in feasible]
    eps = float(feasible[0]["epsilon"])

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(x, ub, "s-", markersize=3, label="log10 P_con upper bound")
    ax.plot(x, lb, "o-", markersize=3, label="log10 P_con lower bound")
    ax.axhline(math.log10(eps), color="gray", linestyle="--",
               label=f"log10 epsilon = {eps}")
    ax.set_xlabel("axis value")
    ax.set_ylabel("log10 probability")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
