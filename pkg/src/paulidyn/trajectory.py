"""Eigenvalue trajectories of time-dependent Pauli maps.

An EigTrajectory carries three scalar profiles, one per Pauli axis, and a
uniform evaluation grid on [0, t_max].  On top of plain evaluation it
provides the zero-event scan (where does an eigenvalue vanish, and does it
come back?) that both the analytic divisibility classifier and the
brute-force propagator oracle consume, plus singular-point extraction and
a pointwise complete-positivity validation.

All verdicts built on these grids are grid-relative: a feature narrower
than the grid spacing (plus the bracket refinement performed here) is
invisible by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .channels import PauliChannel, cp_mask
from .profiles import ConstantProfile, ScalarProfile

__all__ = [
    "Grid",
    "EigTrajectory",
    "phase_damping",
    "ZeroEvent",
    "SingularPoints",
    "CPViolation",
    "scan_zero_events",
    "find_zero_events",
    "find_singular_points",
    "validate",
]

ZERO_TOL_CLOSED_FORM = 1e-10
ZERO_TOL_SAMPLED = 1e-6

# local minima of |lambda| above this value are not refined; a zero hiding
# under such a dip between grid points would be a sub-grid feature anyway
_DIP_THRESHOLD = 0.25


@dataclass(frozen=True)
class Grid:
    """Uniform grid of n points on [0, t_max]."""

    t_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.t_max) and self.t_max > 0.0):
            raise ValueError(f"t_max must be positive and finite, got {self.t_max!r}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n!r}")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n)

    @property
    def step(self) -> float:
        return self.t_max / (self.n - 1)


@dataclass(frozen=True)
class EigTrajectory:
    """Three eigenvalue profiles lambda_alpha(t) plus an evaluation grid."""

    profiles: tuple[ScalarProfile, ScalarProfile, ScalarProfile]
    grid: Grid

    def __post_init__(self):
        if len(self.profiles) != 3:
            raise ValueError("exactly three profiles are required")
        object.__setattr__(self, "profiles", tuple(self.profiles))

    def eval(self, t: float) -> PauliChannel:
        """Channel eigenvalues at a single time."""
        return PauliChannel(*(float(p.value(t)) for p in self.profiles))

    def eval_grid(self, times: np.ndarray | None = None) -> np.ndarray:
        """(n, 3) eigenvalue array over the grid (or explicit times)."""
        tt = self.grid.times if times is None else np.asarray(times, dtype=float)
        return np.column_stack([np.asarray(p.value(tt), dtype=float) for p in self.profiles])

    def derivative(self, t: float) -> np.ndarray:
        """d lambda_alpha / dt at a single time (right-hand at kinks)."""
        return np.array([float(p.derivative(t)) for p in self.profiles])

    def derivative_grid(self, times: np.ndarray | None = None) -> np.ndarray:
        tt = self.grid.times if times is None else np.asarray(times, dtype=float)
        return np.column_stack(
            [np.asarray(p.derivative(tt), dtype=float) for p in self.profiles]
        )

    @property
    def default_zero_tol(self) -> float:
        """Zero band: tight for closed forms, loose for tabulated data."""
        if any(p.is_sampled for p in self.profiles):
            return ZERO_TOL_SAMPLED
        return ZERO_TOL_CLOSED_FORM

    def kink_times(self, t_max: float | None = None) -> tuple[float, ...]:
        tm = self.grid.t_max if t_max is None else t_max
        out: set[float] = set()
        for p in self.profiles:
            out.update(p.kinks_in(tm))
        return tuple(sorted(out))


def phase_damping(profile: ScalarProfile, axis: int, grid: Grid) -> EigTrajectory:
    """Phase-damping trajectory: lambda_axis = 1 and the other two follow profile."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis!r}")
    profs: list[ScalarProfile] = [profile, profile, profile]
    profs[axis - 1] = ConstantProfile(1.0)
    return EigTrajectory((profs[0], profs[1], profs[2]), grid)


@dataclass(frozen=True)
class ZeroEvent:
    """An eigenvalue reaching the zero band, with its aftermath on the grid."""

    axis: int                      # 1, 2 or 3
    t: float                       # refined time the band is reached
    permanent: bool                # stays inside the band until t_max
    revival_t: float | None        # first later grid time with |lambda| > band
    revival_value: float | None


@dataclass(frozen=True)
class SingularPoints:
    """Times at which the count of vanished eigenvalues increments.

    ordered is ascending with +inf for "never"; by_axis maps each Pauli
    axis to the time its eigenvalue permanently enters the zero band.
    """

    ordered: tuple[float, float, float]
    by_axis: tuple[float, float, float]

    @property
    def finite(self) -> tuple[float, ...]:
        return tuple(t for t in self.ordered if math.isfinite(t))


@dataclass(frozen=True)
class CPViolation:
    t: float
    eigs: tuple[float, float, float]


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(fn, a: float, b: float, xatol: float = 1e-13,
                maxiter: int = 200) -> tuple[float, float]:
    """Golden-section minimum of |fn| on [a, b] to absolute x tolerance.

    Used instead of bounded Brent because |fn| has a corner at a
    transversal zero touch, and Brent's relative sqrt(eps)*|x| floor stops
    ~1e-8 away from a corner near x ~ 1 -- far outside the zero band.
    """
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = abs(float(fn(c))), abs(float(fn(d)))
    for _ in range(maxiter):
        if b - a <= xatol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = abs(float(fn(c)))
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = abs(float(fn(d)))
    return (c, fc) if fc < fd else (d, fd)


def _refine_band_entry(fn, a: float, b: float, band: float) -> float:
    """|fn| > band at a, <= band at b: find where |fn| first meets the band."""
    ga = abs(fn(a)) - band
    gb = abs(fn(b)) - band
    if ga <= 0.0:  # already inside at the left edge; nothing to refine
        return a
    if gb > 0.0:  # float disagreement with the sampled value; keep the grid time
        return b
    return float(brentq(lambda x: abs(fn(x)) - band, a, b, xtol=1e-14, maxiter=200))


def scan_zero_events(fn, times: np.ndarray, vals: np.ndarray, band: float,
                     max_refinements: int = 128) -> list[tuple[float, bool, int | None]]:
    """Zero events of one scalar function sampled on a grid.

    Three detectors feed the event list:

      * band runs: consecutive samples with |v| <= band; the entry time is
        refined by bracketing |fn| - band,
      * sign changes between adjacent out-of-band samples (the function
        vanishes inside the bracket by continuity; brentq finds where),
      * tangential touches: a strict local minimum of |v| below a coarse
        dip threshold whose refined minimum falls inside the band.

    Returns (t_zero, permanent, revival_index) tuples; revival_index is the
    first grid index after t_zero with |v| > band, None if there is none.
    """
    n = len(times)
    inside = np.abs(vals) <= band
    raw: list[float] = []

    # band runs
    i = 0
    while i < n:
        if inside[i]:
            j = i
            while j + 1 < n and inside[j + 1]:
                j += 1
            raw.append(times[0] if i == 0 else _refine_band_entry(fn, times[i - 1], times[i], band))
            i = j + 1
        else:
            i += 1

    # sign changes with both samples out of band
    prod = vals[:-1] * vals[1:]
    crossing = np.nonzero((prod < 0.0) & ~inside[:-1] & ~inside[1:])[0]
    for i in crossing[:max_refinements]:
        raw.append(float(brentq(fn, times[i], times[i + 1], xtol=1e-14, maxiter=200)))

    # tangential touches
    crossing_set = set(int(k) for k in crossing)
    av = np.abs(vals)
    refined = 0
    for i in range(1, n - 1):
        if refined >= max_refinements:
            break
        if inside[i] or av[i] >= _DIP_THRESHOLD:
            continue
        if not (av[i] < av[i - 1] and av[i] <= av[i + 1]):
            continue
        if (i - 1) in crossing_set or i in crossing_set:
            continue  # already handled as a sign change
        x, fx = _golden_min(fn, times[i - 1], times[i + 1])
        refined += 1
        if fx <= band:
            raw.append(float(x))

    raw.sort()
    out: list[tuple[float, bool, int | None]] = []
    eps = (times[-1] - times[0]) * 1e-12
    for t0 in raw:
        if out and t0 - out[-1][0] <= eps:
            continue  # duplicate detection of the same zero
        k = np.searchsorted(times, t0, side="right")
        later = np.nonzero(av[k:] > band)[0]
        if later.size:
            out.append((t0, False, int(k + later[0])))
        else:
            out.append((t0, True, None))
    return out


def find_zero_events(tr: EigTrajectory, grid: Grid | None = None,
                     zero_tol: float | None = None) -> tuple[ZeroEvent, ...]:
    """All zero events of the three eigenvalues, sorted by time."""
    g = tr.grid if grid is None else grid
    band = tr.default_zero_tol if zero_tol is None else zero_tol
    times = g.times
    eigs = tr.eval_grid(times)
    events: list[ZeroEvent] = []
    for a in range(3):
        fn = tr.profiles[a].value
        for t0, permanent, k in scan_zero_events(fn, times, eigs[:, a], band):
            events.append(
                ZeroEvent(
                    axis=a + 1,
                    t=t0,
                    permanent=permanent,
                    revival_t=None if k is None else float(times[k]),
                    revival_value=None if k is None else float(eigs[k, a]),
                )
            )
    events.sort(key=lambda e: (e.t, e.axis))
    return tuple(events)


def find_singular_points(tr: EigTrajectory, grid: Grid | None = None,
                         zero_tol: float | None = None) -> SingularPoints:
    """Per-axis permanent vanishing times, plus the same times sorted.

    An eigenvalue that merely touches the band and comes back does not
    produce a singular point; that is a divisibility violation instead.
    """
    events = find_zero_events(tr, grid, zero_tol)
    by_axis = [math.inf, math.inf, math.inf]
    for e in events:
        if e.permanent and e.t < by_axis[e.axis - 1]:
            by_axis[e.axis - 1] = e.t
    ordered = tuple(sorted(by_axis))
    return SingularPoints(ordered=ordered, by_axis=tuple(by_axis))


def validate(tr: EigTrajectory, grid: Grid | None = None,
             tol: float = 1e-9) -> list[CPViolation]:
    """Grid times where the instantaneous map fails complete positivity.

    Empty for every legitimate trajectory; a nonempty result means the
    profile triple does not describe a physical evolution at all.
    """
    g = tr.grid if grid is None else grid
    times = g.times
    eigs = tr.eval_grid(times)
    ok = cp_mask(eigs, tol)
    return [
        CPViolation(t=float(times[i]), eigs=tuple(float(v) for v in eigs[i]))
        for i in np.nonzero(~ok)[0]
    ]
