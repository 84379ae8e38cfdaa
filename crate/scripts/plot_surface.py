#!/usr/bin/env python3
"""Render surface CSVs written by `insdel-bounds surface` as PNGs.

Usage: plot_surface.py OUT_DIR CSV [CSV ...]

Writes one 3D surface per CSV plus `zero-sets.png`, which overlays the
zero-rate contour of every input on the (gamma, delta) plane.
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.lines import Line2D  # noqa: E402


def load(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    gammas = sorted({float(r["gamma"]) for r in rows})
    deltas = sorted({float(r["delta"]) for r in rows})
    rate = np.array([float(r["rate"]) for r in rows]).reshape(len(deltas), len(gammas))
    return np.array(gammas), np.array(deltas), rate, rows[0]["source"]


def surface(out_dir, gammas, deltas, rate, source):
    g, d = np.meshgrid(gammas, deltas)
    fig = plt.figure(figsize=(7, 5.5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(g, d, rate, cmap="viridis", linewidth=0, antialiased=True)
    ax.set_xlabel("insertion fraction γ")
    ax.set_ylabel("deletion fraction δ")
    ax.set_zlabel("rate")
    ax.set_zlim(0, 1)
    ax.view_init(elev=25, azim=35)
    ax.set_title(source)
    fig.tight_layout()
    path = out_dir / f"{source}.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def zero_sets(out_dir, grids):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    handles = []
    for i, (gammas, deltas, rate, source) in enumerate(grids):
        color = f"C{i}"
        ax.contour(gammas, deltas, rate, levels=[1e-9], colors=color)
        handles.append(Line2D([], [], color=color, label=source))
    ax.set_xlabel("insertion fraction γ")
    ax.set_ylabel("deletion fraction δ")
    ax.set_title("zero-rate contours")
    ax.legend(handles=handles)
    fig.tight_layout()
    path = out_dir / "zero-sets.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def main(argv):
    if len(argv) < 3:
        sys.exit(__doc__)
    out_dir = Path(argv[1])
    out_dir.mkdir(parents=True, exist_ok=True)
    grids = [load(p) for p in argv[2:]]
    for grid in grids:
        print(surface(out_dir, *grid))
    print(zero_sets(out_dir, grids))


if __name__ == "__main__":
    main(sys.argv)
