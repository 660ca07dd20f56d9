"""Convex mixtures of single-axis phase-damping maps.

Mixing the three phase-damping maps that share one profile lambda(t) with
weights (x1, x2, x3) gives another Pauli map whose eigenvalues are the
affine pullbacks

    lambda_alpha(t) = x_alpha + (1 - x_alpha) * lambda(t),

so each weight pins its own eigenvalue toward 1.  The four predicates in
this module capture what mixing does to the divisibility hierarchy:

  * a non-increasing profile (CP-divisible ingredients) always yields a
    P-divisible mixture (prop1);
  * such a mixture is CP-divisible iff every weight is nonzero and the
    profile never dips below an algebraic threshold of the weights (prop2);
  * divisible-but-not-P ingredients yield divisible-but-not-P mixtures
    (prop3);
  * with an oscillating profile, the mixture is divisible iff the profile,
    once it reaches the level -x_min/(1-x_min) where the smallest-weight
    eigenvalue vanishes, stays at that level (prop4).

Each predicate is cross-checked against the classifier and the brute-force
propagator oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divisibility import DEFAULT_TOL, DivClass, classify
from .profiles import AffineProfile, ScalarProfile
from .trajectory import (
    ZERO_TOL_CLOSED_FORM,
    ZERO_TOL_SAMPLED,
    EigTrajectory,
    Grid,
    phase_damping,
    scan_zero_events,
)

__all__ = [
    "Mixture",
    "prop1_p_divisible",
    "prop2_cp_bound",
    "prop2_cp_divisible",
    "prop3_preserves_nonP",
    "prop4_divisible_condition",
]


def _check_weights(weights) -> tuple[float, float, float]:
    w = tuple(float(v) for v in weights)
    if len(w) != 3:
        raise ValueError(f"weights must have exactly three entries, got {len(w)}")
    if any(v < 0.0 for v in w):
        raise ValueError(f"weights must be nonnegative, got {w!r}")
    if abs(sum(w) - 1.0) > 1e-12:
        raise ValueError(f"weights must sum to 1 within 1e-12, got sum={sum(w)!r}")
    return w


@dataclass(frozen=True)
class Mixture:
    """Weights (x1, x2, x3) over the three phase-damping axes plus the shared profile."""

    weights: tuple[float, float, float]
    profile: ScalarProfile

    def __post_init__(self):
        object.__setattr__(self, "weights", _check_weights(self.weights))

    def to_trajectory(self, grid: Grid) -> EigTrajectory:
        """Eigenvalue trajectory lambda_alpha = x_alpha + (1 - x_alpha) lambda."""
        profiles = tuple(
            AffineProfile(offset=x, scale=1.0 - x, base=self.profile) for x in self.weights
        )
        return EigTrajectory(profiles, grid)  # type: ignore[arg-type]

    @property
    def zero_band(self) -> float:
        return ZERO_TOL_SAMPLED if self.profile.is_sampled else ZERO_TOL_CLOSED_FORM


def prop1_p_divisible(m: Mixture, grid: Grid, tol: float = DEFAULT_TOL) -> bool:
    """True iff the shared profile is non-increasing on the grid.

    A non-increasing profile means each ingredient map is CP-divisible, and
    every eigenvalue derivative of the mixture is (1 - x_alpha) * lambda'(t)
    <= 0, so the mixture is at least P-divisible.
    """
    d = m.profile.derivative(grid.times)
    return bool(np.max(d) <= tol)


def prop2_cp_bound(weights) -> float | None:
    """Profile threshold above which a nonzero-weight mixture stays CP-divisible.

    For each distinguished axis k the CP rate condition on the mixture
    clears to a quadratic in the profile value; its larger root is

        (-x_k + sqrt((x_i - x_k)(x_j - x_k) / ((1 - x_i)(1 - x_j)))) / (1 - x_k).

    Axes with (x_i - x_k)(x_j - x_k) < 0 have no real roots and impose no
    constraint.  Returns the max over constraining axes, or None when no
    axis constrains (including the degenerate single-map case x_alpha = 1,
    which adds no condition beyond the ingredient's own).
    """
    x = _check_weights(weights)
    if any(abs(v - 1.0) <= 1e-12 for v in x):
        return None
    best: float | None = None
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        disc = (x[i] - x[k]) * (x[j] - x[k])
        if disc < 0.0:
            continue
        root = (-x[k] + math.sqrt(disc / ((1.0 - x[i]) * (1.0 - x[j])))) / (1.0 - x[k])
        best = root if best is None else max(best, root)
    return best


def prop2_cp_divisible(m: Mixture, grid: Grid, tol: float = DEFAULT_TOL) -> bool:
    """CP-divisibility of a mixture with non-increasing profile.

    True iff every weight is strictly positive and the profile never drops
    below prop2_cp_bound (None counts as no constraint).  Requires
    prop1_p_divisible to hold; raises ValueError otherwise.  The nonzero-
    weight clause makes genuinely mixed two-axis maps (some x_alpha = 0)
    non-CP-divisible; the degenerate single-map case x_alpha = 1 also lands
    there and is outside this predicate's scope.
    """
    if not prop1_p_divisible(m, grid, tol):
        raise ValueError(
            "prop2_cp_divisible requires a non-increasing profile "
            "(CP-divisible ingredient maps)"
        )
    if min(m.weights) <= 0.0:
        return False
    bound = prop2_cp_bound(m.weights)
    if bound is None:
        return True
    min_lam = float(np.min(m.profile.value(grid.times)))
    return bool(min_lam >= bound - tol)


def prop3_preserves_nonP(m: Mixture, grid: Grid, tol: float = DEFAULT_TOL,
                         zero_tol: float | None = None) -> bool:
    """Mixtures of divisible-but-not-P-divisible maps stay divisible-but-not-P.

    Requires the single-axis phase-damping ingredient to classify exactly
    Divisible (raises ValueError otherwise); returns whether the mixture
    classifies Divisible too.  This is a theorem check: False means the
    numerics contradict the statement and the test suite fails.
    """
    ingredient = classify(phase_damping(m.profile, 3, grid), tol=tol, zero_tol=zero_tol)
    if ingredient.level is not DivClass.DIVISIBLE:
        raise ValueError(
            "prop3_preserves_nonP requires a divisible-but-not-P-divisible "
            f"ingredient; this profile classifies {ingredient.label}"
        )
    verdict = classify(m.to_trajectory(grid), tol=tol, zero_tol=zero_tol)
    return verdict.level is DivClass.DIVISIBLE


def prop4_divisible_condition(m: Mixture, grid: Grid,
                              zero_tol: float | None = None) -> bool:
    """Divisibility of a mixture via the smallest-weight vanishing level.

    The eigenvalue with the smallest weight x_min reaches zero exactly when
    the profile reaches L = -x_min/(1 - x_min), and it is the first one to
    do so.  The mixture is divisible iff every visit of the profile to that
    level is permanent: once lambda(t) = L it stays within the zero band of
    L for all later times.  Visits are located with the same refined scan
    used for eigenvalue zeros (sign changes, band runs, tangential
    touches), so crossings between grid points are not missed.
    """
    x_min = min(m.weights)
    if 1.0 - x_min <= 1e-12:
        raise ValueError(f"weights {m.weights!r} leave no vanishing level (x_min = 1)")
    level = -x_min / (1.0 - x_min)
    band = m.zero_band if zero_tol is None else zero_tol
    times = grid.times
    fn = lambda s: m.profile.value(s) - level
    events = scan_zero_events(fn, times, np.asarray(fn(times)), band)
    return all(permanent for (_t, permanent, _ridx) in events)
