"""Tour of the divisibility ladder for qubit Pauli dynamical maps.

Four phase-damping evolutions, one per rung of the hierarchy

    Indivisible < Divisible < PDivisible < CPDivisible

are classified twice: once with the analytic ladder of eigenvalue
criteria, once with the brute-force propagator oracle.  The two routes
must agree; each verdict below the top rung comes with a machine-checkable
certificate (a time and a violated condition).

Run:  python3 demos/01_divisibility_tour.py
"""

import math
from pathlib import Path

import numpy as np

from paulidyn import (
    CosProfile,
    CubicProfile,
    ExpProfile,
    Grid,
    Mixture,
    TruncCosProfile,
    classify,
    oracle_classify,
    phase_damping,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    HAVE_MPL = True
except ImportError:  # plots are optional; the printed story is the point
    HAVE_MPL = False

OUT = Path(__file__).resolve().parent / "output"


def build_cases():
    """One trajectory per divisibility class, most to least divisible."""
    cases = []

    grid = Grid(t_max=4.0, n=2000)
    cases.append(("exponential damping", phase_damping(ExpProfile(rate=1.0), 3, grid), grid))

    # Equal mixture of dampings along two axes: the surviving generator rate
    # on the third axis is negative for all t > 0, yet the map stays P-divisible.
    grid = Grid(t_max=8.0, n=2000)
    mix = Mixture((0.5, 0.5, 0.0), ExpProfile(rate=1.0))
    cases.append(("two-axis exponential mixture", mix.to_trajectory(grid), grid))

    # Cubic eigenvalue with an interior increase: divisible (eigenvalues stay
    # nonnegative, no revival after a zero) but not P-divisible.
    grid = Grid(t_max=1.5, n=2000)
    cases.append(("cubic with interior increase",
                  phase_damping(CubicProfile(a=3.0, b=1.0, c=1.4, T=1.0), 3, grid), grid))

    # Plain cosine: the eigenvalue crosses zero and revives -- indivisible.
    grid = Grid(t_max=4.0, n=2000)
    cases.append(("cosine damping", phase_damping(CosProfile(omega=1.0), 3, grid), grid))

    return cases


def main():
    cases = build_cases()
    print("divisibility ladder, analytic classifier vs propagator oracle")
    print("=" * 72)
    for name, tr, grid in cases:
        analytic = classify(tr, grid)
        oracle = oracle_classify(tr, grid)
        agree = "agree" if analytic.level is oracle.level else "DISAGREE"
        print(f"\n{name}")
        print(f"  analytic: {analytic.label:<12}  oracle: {oracle.label:<12}  [{agree}]")
        for cert in analytic.certificates[:3]:
            axis = cert.detail.get("axis")
            where = f"axis {axis}, t = {cert.t:.4f}" if axis else f"t = {cert.t:.4f}"
            print(f"  certificate: {cert.condition} ({where})")
        if not analytic.certificates:
            print("  certificate: none needed (top of the ladder)")
        finite = analytic.singular_points.finite
        if finite:
            ts = ", ".join(f"{t:.4f}" for t in finite)
            print(f"  eigenvalue hits zero permanently at t = {ts}")

    if HAVE_MPL:
        OUT.mkdir(exist_ok=True)
        fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=False)
        for ax, (name, tr, grid) in zip(axes.flat, cases):
            eigs = tr.eval_grid(grid.times)
            for k, style in zip(range(3), ("-", "--", ":")):
                ax.plot(grid.times, eigs[:, k], style, label=f"$\\lambda_{k + 1}$")
            ax.axhline(0.0, color="gray", lw=0.5)
            ax.set_title(f"{name}: {classify(tr, grid).label}", fontsize=9)
            ax.set_xlabel("t")
            ax.legend(fontsize=7)
        fig.tight_layout()
        path = OUT / "divisibility_tour.png"
        fig.savefig(path, dpi=120)
        print(f"\nwrote {path}")
    else:
        print("\nmatplotlib not installed; skipping plots")


if __name__ == "__main__":
    main()
