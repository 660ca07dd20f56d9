"""A noninvertible evolution with a well-defined time-local generator.

The equal-weight mixture of phase dampings along axes 1 and 2 with a
truncated-cosine eigenvalue profile produces the map

    lambda_1(t) = lambda_2(t) = (1 + cos wt)/2  for t <= pi/2w, then 1/2
    lambda_3(t) = cos wt                        for t <= pi/2w, then 0

lambda_3 dies permanently at t = pi/2w, so the map is noninvertible from
then on.  Two eigenvalues survive, which rules out CP-divisibility, yet
the map is P-divisible: the propagator between any two times exists on
the surviving block and is positive.

The generator rates g1 = g2 = (w/2) tan(wt) and
g3 = -(w/2) tan(wt) tan^2(wt/2) individually diverge at the cutoff, but
the pair sums that drive the surviving eigenvalues stay integrable:
g1 + g3 -> w (finite), while g1 + g2 -> +inf kills lambda_3 exactly.

Run:  python3 demos/02_noninvertible_mixture.py
"""

import math
from pathlib import Path

import numpy as np

from paulidyn import (
    Grid,
    Mixture,
    TruncCosProfile,
    classify,
    ode_roundtrip,
    rate_sum_limit,
    rates_from_eigs,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    HAVE_MPL = True
except ImportError:
    HAVE_MPL = False

OUT = Path(__file__).resolve().parent / "output"


def main():
    omega = 1.0
    cut = 0.5 * math.pi / omega
    grid = Grid(t_max=1.5 * math.pi / omega, n=3000)
    mix = Mixture((0.5, 0.5, 0.0), TruncCosProfile(omega=omega))
    tr = mix.to_trajectory(grid)

    print("noninvertible two-axis mixture (truncated cosine, w = 1)")
    print("=" * 72)

    verdict = classify(tr, grid)
    print(f"\nclassification: {verdict.label}")
    for cert in verdict.certificates:
        axis = cert.detail.get("axis")
        where = f"axis {axis}, t = {cert.t:.4f}" if axis else f"t = {cert.t:.4f}"
        print(f"  certificate: {cert.condition} ({where})")
    print(f"  lambda_3 dies permanently at t = {verdict.singular_points.by_axis[2]:.6f}"
          f"  (pi/2w = {cut:.6f})")

    # Rates on the invertible window [0, cut)
    tt = np.linspace(0.0, 0.98 * cut, 8)
    gam = rates_from_eigs(tr, tt)
    print("\ngenerator rates on the invertible window:")
    print(f"  {'t':>8}  {'g1':>12}  {'g2':>12}  {'g3':>12}")
    for t, (g1, g2, g3) in zip(tt, gam):
        print(f"  {t:8.4f}  {g1:12.6f}  {g2:12.6f}  {g3:12.6f}")
    print("  (g1 and g2 blow up at the cutoff; g3 blows down)")

    # Pair sums at the singular time: finite for the surviving block.
    for axes in ((1, 3), (2, 3), (1, 2)):
        lim = rate_sum_limit(tr, axes, cut)
        if lim.diverged:
            print(f"  lim g{axes[0]} + g{axes[1]} at cutoff: diverges to +inf "
                  f"(this is what sends lambda_3 to exactly 0)")
        else:
            print(f"  lim g{axes[0]} + g{axes[1]} at cutoff: {lim.value:.9f} "
                  f"(finite; the surviving eigenvalues land on 1/2)")

    # Master-equation self-consistency before the cutoff.
    sub = Grid(t_max=0.45 * math.pi / omega, n=200)
    dev = ode_roundtrip(tr, sub)
    print(f"\nmaster-equation roundtrip deviation on [0, 0.45 pi/w]: {dev:.2e}")

    if HAVE_MPL:
        OUT.mkdir(exist_ok=True)
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
        eigs = tr.eval_grid(grid.times)
        for k, style in zip(range(3), ("-", "--", ":")):
            ax1.plot(grid.times, eigs[:, k], style, label=f"$\\lambda_{k + 1}$")
        ax1.axvline(cut, color="gray", lw=0.5)
        ax1.set_title("eigenvalues (two survive)", fontsize=9)
        ax1.set_xlabel("t")
        ax1.legend(fontsize=8)

        tt = np.linspace(0.0, 0.95 * cut, 400)
        gam = rates_from_eigs(tr, tt)
        for k, style in zip(range(3), ("-", "--", ":")):
            ax2.plot(tt, gam[:, k], style, label=f"$\\gamma_{k + 1}$")
        ax2.axvline(cut, color="gray", lw=0.5)
        ax2.set_title("rates diverge at the cutoff", fontsize=9)
        ax2.set_xlabel("t")
        ax2.legend(fontsize=8)
        fig.tight_layout()
        path = OUT / "noninvertible_mixture.png"
        fig.savefig(path, dpi=120)
        print(f"wrote {path}")
    else:
        print("matplotlib not installed; skipping plots")


if __name__ == "__main__":
    main()
