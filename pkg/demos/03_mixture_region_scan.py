"""Divisibility regions on the simplex of mixture weights.

Mixing phase dampings along the three axes with weights (x1, x2, x3)
gives the eigenvalues lambda_a(t) = x_a + (1 - x_a) c(t).  For a
monotonically decaying profile c the mixture is always P-divisible;
whether it is CP-divisible depends on how far c falls relative to a
closed-form threshold in the weights (`prop2_cp_bound`).

This demo scans a weight lattice for the exponential profile at several
horizons and shows the CP region shrinking toward the symmetric point as
the horizon grows, matching the closed-form bound exactly.

Run:  python3 demos/03_mixture_region_scan.py
"""

import math
from pathlib import Path

import numpy as np

from paulidyn import (
    DivClass,
    ExpProfile,
    Grid,
    Mixture,
    classify,
    prop1_p_divisible,
    prop2_cp_bound,
    prop2_cp_divisible,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    HAVE_MPL = True
except ImportError:
    HAVE_MPL = False

OUT = Path(__file__).resolve().parent / "output"


def simplex_lattice(resolution):
    """All weight triples (i, j, k)/resolution with i + j + k = resolution."""
    pts = []
    for i in range(resolution + 1):
        for j in range(resolution + 1 - i):
            pts.append((i / resolution, j / resolution, (resolution - i - j) / resolution))
    return pts


def main():
    profile = ExpProfile(rate=1.0)
    resolution = 16
    pts = simplex_lattice(resolution)
    horizons = (0.5, 2.0, 5.0)

    print("CP-divisibility region of exponential-damping mixtures")
    print("=" * 72)
    print(f"lattice: {len(pts)} weight triples at resolution {resolution}\n")

    results = {}
    for t_max in horizons:
        grid = Grid(t_max=t_max, n=600)
        floor = math.exp(-t_max)  # smallest profile value reached on the grid
        counts = {}
        labels = []
        for x in pts:
            m = Mixture(x, profile)
            v = classify(m.to_trajectory(grid), grid)
            labels.append(v.level)
            counts[v.label] = counts.get(v.label, 0) + 1

            # cross-check the closed-form threshold against the classifier
            bound = prop2_cp_bound(x)
            if bound is not None and min(x) > 0 and abs(floor - bound) > 1e-9:
                closed_form = floor >= bound
                assert closed_form == (v.level is DivClass.CP_DIVISIBLE), (x, t_max)
        results[t_max] = labels
        summary = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
        print(f"t_max = {t_max:>4}:  profile floor e^-t_max = {floor:.4f}   {summary}")

    print("\nevery lattice verdict matched the closed-form threshold "
          "`profile floor >= prop2_cp_bound(weights)`")

    x = (0.5, 0.3, 0.2)
    print(f"\nexample weights {x}:")
    print(f"  monotone profile => P-divisible: {prop1_p_divisible(Mixture(x, profile), Grid(5.0, 600))}")
    print(f"  CP threshold on the profile: {prop2_cp_bound(x):.6f}")
    for t_max in horizons:
        ok = prop2_cp_divisible(Mixture(x, profile), Grid(t_max, 600))
        print(f"  CP-divisible up to t_max = {t_max}: {ok}")

    if HAVE_MPL:
        OUT.mkdir(exist_ok=True)
        fig, axes = plt.subplots(1, len(horizons), figsize=(10.5, 3.2))
        colors = {
            DivClass.CP_DIVISIBLE: "#2066a8",
            DivClass.P_DIVISIBLE: "#8ec1da",
            DivClass.DIVISIBLE: "#f6d6c2",
            DivClass.INDIVISIBLE: "#d47264",
        }
        for ax, t_max in zip(np.atleast_1d(axes), horizons):
            # project the simplex onto the plane (equilateral-triangle view)
            xs = [x2 + 0.5 * x3 for _, x2, x3 in pts]
            ys = [math.sqrt(3) / 2 * x3 for _, _, x3 in pts]
            cs = [colors[lv] for lv in results[t_max]]
            ax.scatter(xs, ys, c=cs, s=28)
            ax.set_title(f"t_max = {t_max}", fontsize=9)
            ax.set_aspect("equal")
            ax.axis("off")
            for label, corner in (("x1", (0, -0.05)), ("x2", (1, -0.05)),
                                  ("x3", (0.5, math.sqrt(3) / 2 + 0.03))):
                ax.annotate(label, corner, ha="center", fontsize=8)
        handles = [plt.Line2D([], [], marker="o", ls="", color=c, label=lv.name)
                   for lv, c in colors.items()]
        fig.legend(handles=handles, loc="lower center", ncol=4, fontsize=8)
        fig.tight_layout(rect=(0, 0.07, 1, 1))
        path = OUT / "mixture_region_scan.png"
        fig.savefig(path, dpi=120)
        print(f"\nwrote {path}")
    else:
        print("\nmatplotlib not installed; skipping plots")


if __name__ == "__main__":
    main()
