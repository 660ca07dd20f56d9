"""Time-local generator rates of Pauli dynamical maps.

On invertible stretches the map obeys a master equation with generator
L(t) = sum_alpha gamma_alpha(t) L_alpha, L_alpha[X] = (s_alpha X s_alpha - X)/2,
and the eigenvalues satisfy lambda_alpha = exp(Gamma_alpha - Gamma_0) with
Gamma_alpha the running integral of gamma_alpha and Gamma_0 their total.
With the log-derivatives l_alpha = lambda'_alpha / lambda_alpha the linear
solve reads

    gamma_1 = (l_1 - l_2 - l_3)/2   (and cyclic),

which this module applies both ways: extraction (rates_from_eigs), forward
reconstruction by quadrature (eigs_from_rates), an ODE round trip, and the
one-sided limits of pairwise rate sums at divergence times, where a pair
sum often stays finite even though each rate blows up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from .profiles import SampledProfile
from .trajectory import EigTrajectory, Grid, find_singular_points

__all__ = [
    "SingularGenerator",
    "RateTriple",
    "RateSumLimit",
    "rates_from_eigs",
    "eigs_from_rates",
    "ode_roundtrip",
    "rate_sum_limit",
]

_EXP_CAP = 60.0  # exp(-60) ~ 9e-27: below any zero band, the eigenvalue is dead


class SingularGenerator(Exception):
    """The time-local generator does not exist at this time."""

    def __init__(self, t: float, axis: int, value: float):
        self.t = t
        self.axis = axis
        self.value = value
        super().__init__(
            f"generator is singular at t={t!r}: lambda_{axis} = {value!r} is inside the zero band"
        )


@dataclass(frozen=True)
class RateTriple:
    """Three rate functions gamma_alpha(t) plus their flagged divergence times.

    The callables take a scalar time and return a float; they must be
    integrable between consecutive divergence times.
    """

    g1: object
    g2: object
    g3: object
    divergence_times: tuple[float, ...] = ()

    def values(self, t: float) -> np.ndarray:
        return np.array([float(self.g1(t)), float(self.g2(t)), float(self.g3(t))])


def rates_from_eigs(tr: EigTrajectory, t, zero_tol: float | None = None) -> np.ndarray:
    """Extract (gamma_1, gamma_2, gamma_3) at time(s) t.

    Shape (3,) for scalar t, (n, 3) for an array.  Raises SingularGenerator
    if any eigenvalue at any requested time is inside the zero band (the
    map is not invertible there, so the rates do not exist).
    """
    band = tr.default_zero_tol if zero_tol is None else zero_tol
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    lam = tr.eval_grid(tt)
    small = lam <= band
    if small.any():
        i, a = np.argwhere(small)[0]
        raise SingularGenerator(float(tt[i]), int(a) + 1, float(lam[i, a]))
    ell = tr.derivative_grid(tt) / lam
    gamma = ell - 0.5 * ell.sum(axis=1, keepdims=True)
    if np.ndim(t) == 0:
        return gamma[0]
    return gamma


# ---------------------------------------------------------------------------
# forward reconstruction


def _quad(f, a: float, b: float) -> float:
    if b <= a:
        return 0.0
    val, _ = quad(f, a, b, epsabs=1e-10, epsrel=1e-12, limit=200)
    return val


def _one_sided_integral(f, a: float, b: float, toward: str) -> float:
    """Integral of f over (a, b) where one end may host a divergence.

    toward="left": the suspect end is b (integrate as a limit from inside);
    toward="right": the suspect end is a.  Chunks approach the suspect end
    geometrically; geometric decay of the chunks means a convergent
    integral, stalling chunks mean a pole/log divergence and the result is
    +-inf with the sign of the tail.  Designed for the pole and log
    divergences of time-local rates, not for fractional-power endpoints.
    """
    span = b - a
    if span <= 0.0:
        return 0.0
    total = 0.0
    eps = 0.5 * span
    if toward == "left":
        total += _quad(f, a, b - eps)
    else:
        total += _quad(f, a + eps, b)
    prev_chunk = None
    for k in range(200):
        nxt = 0.25 * eps
        if toward == "left":
            lo, hi = b - eps, b - nxt
            edge_exhausted = not (lo < hi < b)
        else:
            lo, hi = a + nxt, a + eps
            edge_exhausted = not (a < lo < hi)
        if edge_exhausted:
            break
        chunk = _quad(f, lo, hi)
        total += chunk
        if abs(chunk) < 1e-13 and k >= 1:
            return total
        if total > _EXP_CAP:
            return math.inf
        if total < -_EXP_CAP:
            return -math.inf
        if prev_chunk is not None and k >= 5 and abs(chunk) >= 0.95 * abs(prev_chunk):
            return math.copysign(math.inf, chunk)
        prev_chunk = chunk
        eps = nxt
    return total


def _segment_integral(f, a: float, b: float, left_singular: bool, right_singular: bool) -> float:
    """Integral over [a, b] with divergences allowed only at the marked ends."""
    if b <= a:
        return 0.0
    if left_singular and right_singular:
        mid = 0.5 * (a + b)
        first = _one_sided_integral(f, a, mid, toward="right")
        if math.isinf(first):
            return first
        second = _one_sided_integral(f, mid, b, toward="left")
        if math.isinf(second):
            return second
        return first + second
    if left_singular:
        return _one_sided_integral(f, a, b, toward="right")
    if right_singular:
        return _one_sided_integral(f, a, b, toward="left")
    return _quad(f, a, b)


def eigs_from_rates(rates: RateTriple, grid: Grid, tol: float = 1e-9) -> EigTrajectory:
    """Reconstruct the eigenvalue trajectory from rate functions.

    lambda_alpha(t) = exp(-integral of the pair sum gamma_beta + gamma_gamma),
    integrated by adaptive quadrature between the flagged divergence times.
    At a flagged time the pair sum may stay integrable (the eigenvalue drops
    to a finite limit, like an eigenvalue pair meeting at 1/2) or accumulate
    +inf (the eigenvalue reaches 0 and is frozen there from that time on).
    A pair sum integrating to -inf would push the eigenvalue above 1 and
    raises ValueError, as does any reconstructed value above 1 + tol.

    The result carries sampled profiles on the grid, so grid.n must be >= 4.
    """
    if grid.n < 4:
        raise ValueError("grid must have at least 4 points to carry sampled profiles")
    times = grid.times
    cuts = sorted({float(c) for c in rates.divergence_times if 0.0 < c <= grid.t_max})
    gs = (rates.g1, rates.g2, rates.g3)
    lam = np.ones((times.size, 3))
    tiny = 1e-12 * max(grid.t_max, 1.0)

    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        f = lambda x, _b=gs[b], _c=gs[c]: float(_b(x)) + float(_c(x))
        dead = False
        exponent = 0.0
        pos = 0.0  # current integration front
        pos_singular = False  # pos is a divergence time: resume via a right limit
        ci = 0
        for i, t in enumerate(times):
            if i == 0:
                continue
            if not dead:
                # absorb every divergence time up to (or at) this grid point
                while ci < len(cuts) and cuts[ci] <= t + tiny:
                    cut = cuts[ci]
                    ci += 1
                    inc = _segment_integral(f, pos, cut, pos_singular, True)
                    if math.isinf(inc):
                        if inc < 0:
                            raise ValueError(
                                f"rates diverge to -inf at t={cut!r}: eigenvalue "
                                f"{a + 1} would leave [0, 1]"
                            )
                        dead = True
                        break
                    exponent += inc
                    pos = cut
                    pos_singular = True
                    if exponent > _EXP_CAP:
                        dead = True
                        break
            if dead:
                lam[i, a] = 0.0
                continue
            if abs(t - pos) <= tiny:
                # grid point sits on the divergence: the eigenvalue is
                # continuous there, so the left limit is its value
                lam[i, a] = math.exp(-exponent)
                continue
            inc = _segment_integral(f, pos, t, pos_singular, False)
            if math.isinf(inc):
                if inc < 0:
                    raise ValueError(
                        f"rates diverge to -inf just after t={pos!r}: eigenvalue "
                        f"{a + 1} would leave [0, 1]"
                    )
                dead = True
                lam[i, a] = 0.0
                continue
            exponent += inc
            pos = t
            pos_singular = False
            lam[i, a] = 0.0 if exponent > _EXP_CAP else math.exp(-exponent)
            if exponent > _EXP_CAP:
                dead = True

    if lam.max() > 1.0 + tol:
        i, a = np.argwhere(lam > 1.0 + tol)[0]
        raise ValueError(
            f"reconstructed eigenvalue {a + 1} exceeds 1 at t={times[i]!r}: {lam[i, a]!r}"
        )
    lam = np.minimum(lam, 1.0)
    profiles = tuple(SampledProfile(tuple(times), tuple(lam[:, a])) for a in range(3))
    return EigTrajectory(profiles, grid)  # type: ignore[arg-type]


def ode_roundtrip(tr: EigTrajectory, grid: Grid | None = None,
                  rtol: float = 1e-9, zero_tol: float | None = None) -> float:
    """Extract rates, integrate lambda'_a = (gamma_a - gamma_0) lambda_a from 1,
    and return the maximum deviation from the original eigenvalues on the grid.

    The trajectory must be invertible on the grid (every eigenvalue outside
    the zero band), otherwise SingularGenerator propagates.
    """
    g = tr.grid if grid is None else grid
    band = tr.default_zero_tol if zero_tol is None else zero_tol
    times = g.times
    lam = tr.eval_grid(times)
    small = lam <= band
    if small.any():
        i, a = np.argwhere(small)[0]
        raise SingularGenerator(float(times[i]), int(a) + 1, float(lam[i, a]))

    def rhs(t, y):
        gam = rates_from_eigs(tr, t, zero_tol=band)
        return (gam - gam.sum()) * y

    sol = solve_ivp(rhs, (times[0], times[-1]), np.ones(3), method="DOP853",
                    rtol=rtol, atol=1e-12, t_eval=times)
    if not sol.success:
        raise RuntimeError(f"ODE integration failed: {sol.message}")
    return float(np.abs(sol.y.T - lam).max())


# ---------------------------------------------------------------------------
# pairwise rate-sum limits at divergence times


@dataclass(frozen=True)
class RateSumLimit:
    """One-sided limit of gamma_i + gamma_j as t -> t_star from the left."""

    value: float  # the finite limit, or +-inf
    error: float  # extrapolation error estimate (nan when diverged)
    diverged: bool


def _neville_at_zero(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    """Polynomial extrapolation of (xs, ys) to x = 0 with an error estimate."""
    row = list(ys)
    best = row[-1]
    err = math.inf
    n = len(xs)
    for k in range(1, n):
        nxt = []
        for i in range(n - k):
            nxt.append((xs[i] * row[i + 1] - xs[i + k] * row[i]) / (xs[i] - xs[i + k]))
        row = nxt
        err = abs(row[-1] - best)
        best = row[-1]
    return float(best), float(err)


def rate_sum_limit(tr: EigTrajectory, axes: tuple[int, int], t_star: float,
                   zero_tol: float | None = None, n_levels: int = 12,
                   eps0: float | None = None) -> RateSumLimit:
    """Limit of gamma_i(t) + gamma_j(t) as t approaches a divergence time.

    t_star must sit at a finite singular point of the trajectory (within two
    grid steps); elsewhere the rates have no divergence to resolve and
    ValueError is raised.  The limit is taken from the left on a geometric
    sequence t_star - eps0 / 2^k and Richardson-extrapolated; a sequence
    growing without bound reports +-inf with its sign.
    """
    i, j = axes
    if i not in (1, 2, 3) or j not in (1, 2, 3) or i == j:
        raise ValueError(f"axes must be two distinct Pauli axes, got {axes!r}")
    g = tr.grid
    sp = find_singular_points(tr, g, zero_tol)
    near = [v for v in sp.by_axis if math.isfinite(v) and abs(v - t_star) <= 2.0 * g.step]
    if not near:
        raise ValueError(
            f"t_star={t_star!r} is not a flagged divergence time of this trajectory"
        )
    t_div = min(near, key=lambda v: abs(v - t_star))
    band = tr.default_zero_tol if zero_tol is None else zero_tol

    if eps0 is None:
        eps0 = min(0.1 * t_div, 0.5 * (g.t_max - 0.0) / 8.0)
    # back off until the whole approach sequence stays invertible
    for _ in range(60):
        try:
            rates_from_eigs(tr, t_div - eps0, zero_tol=band)
            break
        except SingularGenerator:
            eps0 *= 0.5
    eps = eps0 * 0.5 ** np.arange(n_levels)
    vals = np.empty(n_levels)
    for k in range(n_levels):
        gam = rates_from_eigs(tr, t_div - eps[k], zero_tol=band)
        vals[k] = gam[i - 1] + gam[j - 1]

    tail = np.abs(vals[-4:])
    growing = np.all(tail[1:] > 1.3 * tail[:-1])
    if growing or not np.all(np.isfinite(vals)):
        return RateSumLimit(value=math.copysign(math.inf, vals[-1]),
                            error=math.nan, diverged=True)
    value, err = _neville_at_zero(eps, vals)
    return RateSumLimit(value=value, error=err, diverged=False)
