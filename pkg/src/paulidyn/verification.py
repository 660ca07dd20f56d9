"""Randomized cross-checks of the analytic criteria.

Two suites, both fully seeded:

  * run_equivalence_suite draws trajectories from twelve families covering
    all four divisibility classes (including noninvertible maps and convex
    mixtures) and demands that the analytic classifier and the brute-force
    propagator oracle return the same class;
  * run_proposition_suite replays the four mixture predicates against the
    classifier on random mixtures.

Families are margin-guarded: draws whose verdict hinges on a quantity
within 1e-3 of a decision boundary are resampled, so the comparisons test
logic rather than tie-breaking at floating-point scale.  `inject_bug`
deliberately corrupts one comparison as a negative control for the
verification pipeline itself.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .divisibility import DivClass, classify, oracle_classify
from .generator import RateTriple
from .mixtures import (
    Mixture,
    prop1_p_divisible,
    prop2_cp_bound,
    prop2_cp_divisible,
    prop3_preserves_nonP,
    prop4_divisible_condition,
)
from .profiles import (
    AbsCosProfile,
    AffineProfile,
    CosProfile,
    CubicProfile,
    DampedCosProfile,
    ExpProfile,
    TruncCosProfile,
)
from .trajectory import EigTrajectory, Grid, find_singular_points, phase_damping

__all__ = [
    "CheckFailure",
    "SuiteReport",
    "run_equivalence_suite",
    "run_proposition_suite",
    "random_rate_triple",
]

_MARGIN = 1e-3
_MAX_RESAMPLES = 500


@dataclass(frozen=True)
class CheckFailure:
    suite: str
    trial: int
    message: str
    spec: dict


@dataclass(frozen=True)
class SuiteReport:
    name: str
    n_trials: int
    failures: tuple[CheckFailure, ...]
    elapsed_s: float

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def n_passed(self) -> int:
        return self.n_trials - len(self.failures)

    def summary_line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return (
            f"{self.name}: {self.n_passed}/{self.n_trials} trials passed "
            f"[{status}] ({self.elapsed_s:.1f}s)"
        )


# ---------------------------------------------------------------------------
# random draw helpers


def _grid(rng, t_max: float) -> Grid:
    return Grid(t_max, 200 + int(rng.integers(0, 40)))


def _axis(rng) -> int:
    return int(rng.integers(1, 4))


def _positive_weights(rng) -> tuple[float, float, float]:
    for _ in range(_MAX_RESAMPLES):
        w = rng.dirichlet((1.0, 1.0, 1.0))
        if w.min() >= 0.05:
            return tuple(float(v) for v in w)
    raise RuntimeError("weight resampling failed")


def _two_axis_weights(rng) -> tuple[float, float, float]:
    u = float(rng.uniform(0.1, 0.9))
    w = [u, 1.0 - u, 0.0]
    order = rng.permutation(3)
    return tuple(w[int(k)] for k in order)


def _decaying_profile(rng):
    """Non-increasing profile: plain exponential or one with a negative tail."""
    r = float(rng.uniform(0.4, 2.5))
    if rng.uniform() < 0.5:
        return ExpProfile(rate=r), {"kind": "exp", "r": r}
    m = float(rng.uniform(0.05, 0.6))
    prof = AffineProfile(offset=-m, scale=1.0 + m, base=ExpProfile(rate=r))
    return prof, {"kind": "affine_exp", "r": r, "tail": -m}


def _guarded_monotone_mixture(rng, weights_fn) -> tuple[Mixture, Grid, dict]:
    """Mixture of a decaying profile whose min keeps clear of the CP bound."""
    for _ in range(_MAX_RESAMPLES):
        profile, pspec = _decaying_profile(rng)
        weights = weights_fn(rng)
        grid = _grid(rng, float(rng.uniform(1.0, 2.5)))
        bound = prop2_cp_bound(weights)
        min_lam = float(np.min(profile.value(grid.times)))
        if bound is None or abs(min_lam - bound) > _MARGIN:
            spec = {"family": "mixture", "weights": list(weights), "profile": pspec,
                    "grid": {"t_max": grid.t_max, "n": grid.n}}
            return Mixture(weights, profile), grid, spec
    raise RuntimeError("mixture resampling failed")


def _random_cubic(rng) -> CubicProfile:
    a = float(rng.uniform(1.5, 4.0))
    b = float(rng.uniform(0.15, 0.85)) * a
    lo = (a + b) ** 2 / (4.0 * a)
    hi = (a * a + a * b + b * b) / (3.0 * a)
    c = lo + float(rng.uniform(0.15, 0.85)) * (hi - lo)
    T = float(rng.uniform(0.8, 1.5))
    return CubicProfile(a=a, b=b, c=c, T=T)


# ---------------------------------------------------------------------------
# equivalence-suite trajectory families


def _case_exp(rng):
    r = float(rng.uniform(0.3, 3.0))
    axis = _axis(rng)
    grid = _grid(rng, float(rng.uniform(1.0, 2.5)))
    spec = {"family": "phase_damping", "profile": {"kind": "exp", "r": r}, "axis": axis,
            "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, phase_damping(ExpProfile(rate=r), axis, grid), grid


def _case_trunc_cos(rng):
    w = float(rng.uniform(0.8, 3.0))
    axis = _axis(rng)
    grid = _grid(rng, float(rng.uniform(1.3, 3.0)) * math.pi / (2.0 * w))
    spec = {"family": "phase_damping", "profile": {"kind": "trunc_cos", "omega": w},
            "axis": axis, "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, phase_damping(TruncCosProfile(omega=w), axis, grid), grid


def _case_cos(rng):
    w = float(rng.uniform(0.8, 3.0))
    axis = _axis(rng)
    grid = _grid(rng, float(rng.uniform(1.3, 2.6)) * math.pi / (2.0 * w))
    spec = {"family": "phase_damping", "profile": {"kind": "cos", "omega": w},
            "axis": axis, "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, phase_damping(CosProfile(omega=w), axis, grid), grid


def _case_abs_cos(rng):
    w = float(rng.uniform(0.8, 3.0))
    axis = _axis(rng)
    grid = _grid(rng, float(rng.uniform(1.3, 2.6)) * math.pi / (2.0 * w))
    spec = {"family": "phase_damping", "profile": {"kind": "abs_cos", "omega": w},
            "axis": axis, "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, phase_damping(AbsCosProfile(omega=w), axis, grid), grid


def _case_damped_cos(rng):
    w = float(rng.uniform(0.8, 3.0))
    Z = float(rng.uniform(0.1, 0.8))
    axis = _axis(rng)
    grid = _grid(rng, float(rng.uniform(1.3, 2.8)) * math.pi / (2.0 * w))
    spec = {"family": "phase_damping", "profile": {"kind": "damped_cos", "omega": w, "Z": Z},
            "axis": axis, "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, phase_damping(DampedCosProfile(decay=Z, omega=w), axis, grid), grid


def _case_cubic(rng):
    prof = _random_cubic(rng)
    axis = _axis(rng)
    grid = _grid(rng, float(rng.uniform(1.0, 1.3)) * prof.T)
    spec = {"family": "phase_damping",
            "profile": {"kind": "cubic", "a": prof.a, "b": prof.b, "c": prof.c, "T": prof.T},
            "axis": axis, "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, phase_damping(prof, axis, grid), grid


def _case_isotropic_abs_cos(rng):
    w = float(rng.uniform(0.8, 3.0))
    grid = _grid(rng, float(rng.uniform(1.3, 2.6)) * math.pi / (2.0 * w))
    prof = AbsCosProfile(omega=w)
    spec = {"family": "isotropic", "profile": {"kind": "abs_cos", "omega": w},
            "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, EigTrajectory((prof, prof, prof), grid), grid


def _case_mixture_positive(rng):
    m, grid, spec = _guarded_monotone_mixture(rng, _positive_weights)
    return spec, m.to_trajectory(grid), grid


def _case_mixture_two_axis(rng):
    m, grid, spec = _guarded_monotone_mixture(rng, _two_axis_weights)
    return spec, m.to_trajectory(grid), grid


def _case_mixture_trunc(rng):
    for _ in range(_MAX_RESAMPLES):
        w = float(rng.uniform(0.8, 3.0))
        weights = _positive_weights(rng)
        grid = _grid(rng, float(rng.uniform(1.2, 2.2)) * math.pi / (2.0 * w))
        bound = prop2_cp_bound(weights)
        # profile minimum is exactly 0 (the flat branch)
        if bound is None or abs(bound) > _MARGIN:
            m = Mixture(weights, TruncCosProfile(omega=w))
            spec = {"family": "mixture", "weights": list(weights),
                    "profile": {"kind": "trunc_cos", "omega": w},
                    "grid": {"t_max": grid.t_max, "n": grid.n}}
            return spec, m.to_trajectory(grid), grid
    raise RuntimeError("mixture resampling failed")


def _case_mixture_half_half(rng):
    w = float(rng.uniform(0.8, 3.0))
    weights = _two_axis_weights(rng)
    weights = tuple(0.5 if v > 0 else 0.0 for v in weights)
    grid = _grid(rng, float(rng.uniform(1.2, 2.0)) * math.pi / (2.0 * w))
    m = Mixture(weights, TruncCosProfile(omega=w))
    spec = {"family": "mixture", "weights": list(weights),
            "profile": {"kind": "trunc_cos", "omega": w},
            "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, m.to_trajectory(grid), grid


def _case_mixture_cos(rng):
    w = float(rng.uniform(0.8, 3.0))
    weights = _positive_weights(rng) if rng.uniform() < 0.5 else _two_axis_weights(rng)
    grid = _grid(rng, float(rng.uniform(1.05, 1.6)) * math.pi / w)
    m = Mixture(weights, CosProfile(omega=w))
    spec = {"family": "mixture", "weights": list(weights),
            "profile": {"kind": "cos", "omega": w},
            "grid": {"t_max": grid.t_max, "n": grid.n}}
    return spec, m.to_trajectory(grid), grid


_EQUIVALENCE_FAMILIES = (
    _case_exp,
    _case_trunc_cos,
    _case_cos,
    _case_abs_cos,
    _case_damped_cos,
    _case_cubic,
    _case_isotropic_abs_cos,
    _case_mixture_positive,
    _case_mixture_two_axis,
    _case_mixture_trunc,
    _case_mixture_half_half,
    _case_mixture_cos,
)


def run_equivalence_suite(n_trials: int = 200, seed: int = 0,
                          inject_bug: bool = False) -> SuiteReport:
    """Analytic classifier vs propagator oracle on random trajectories."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    failures = []
    for i in range(n_trials):
        spec, tr, grid = _EQUIVALENCE_FAMILIES[i % len(_EQUIVALENCE_FAMILIES)](rng)
        analytic = classify(tr, grid)
        level = analytic.level
        if inject_bug and i == 0:
            level = DivClass((int(level) + 1) % 4)
        oracle = oracle_classify(tr, grid, seed=seed + i)
        if int(level) != int(oracle.level):
            failures.append(CheckFailure(
                suite="classify_vs_oracle", trial=i,
                message=f"classifier says {level.label}, oracle says {oracle.level.label}",
                spec=spec))
    return SuiteReport("classify_vs_oracle", n_trials, tuple(failures),
                       time.perf_counter() - start)


# ---------------------------------------------------------------------------
# proposition suites


def _nonneg_decaying_profile(rng):
    """Non-increasing profile that never crosses zero: a CP-divisible ingredient.

    A monotone profile with a transversal zero crossing is NOT a
    CP-divisible ingredient (its phase-damping map loses its propagator at
    the crossing), so the prop1 hypothesis needs nonnegative draws.
    """
    r = float(rng.uniform(0.4, 2.5))
    pick = rng.uniform()
    if pick < 0.4:
        return ExpProfile(rate=r), {"kind": "exp", "r": r}
    if pick < 0.8:
        q = float(rng.uniform(0.05, 0.5))
        prof = AffineProfile(offset=q, scale=1.0 - q, base=ExpProfile(rate=r))
        return prof, {"kind": "affine_exp", "r": r, "tail": q}
    w = float(rng.uniform(0.8, 3.0))
    return TruncCosProfile(omega=w), {"kind": "trunc_cos", "omega": w}


def _prop1_trial(rng, i, failures):
    profile, pspec = _nonneg_decaying_profile(rng)
    weights = _positive_weights(rng) if i % 2 == 0 else _two_axis_weights(rng)
    grid = _grid(rng, float(rng.uniform(1.0, 2.5)))
    m = Mixture(weights, profile)
    spec = {"weights": list(weights), "profile": pspec,
            "grid": {"t_max": grid.t_max, "n": grid.n}}
    if not prop1_p_divisible(m, grid):
        failures.append(CheckFailure("prop1", i, "non-increasing profile not recognized", spec))
        return
    verdict = classify(m.to_trajectory(grid), grid)
    if verdict.level < DivClass.P_DIVISIBLE:
        failures.append(CheckFailure(
            "prop1", i,
            f"mixture of CP-divisible maps classifies {verdict.label}", spec))


def _prop2_trial(rng, i, failures):
    m, grid, spec = _guarded_monotone_mixture(
        rng, _positive_weights if i % 2 == 0 else _two_axis_weights)
    predicted = prop2_cp_divisible(m, grid)
    verdict = classify(m.to_trajectory(grid), grid)
    if predicted != (verdict.level is DivClass.CP_DIVISIBLE):
        failures.append(CheckFailure(
            "prop2", i,
            f"threshold predicate says {predicted}, classifier says {verdict.label}", spec))
        return
    if min(m.weights) > 0.0 and find_singular_points(m.to_trajectory(grid), grid).finite:
        failures.append(CheckFailure(
            "prop2", i, "all-positive-weight mixture became noninvertible", spec))


def _prop3_trial(rng, i, failures):
    prof = _random_cubic(rng)
    weights = _positive_weights(rng) if i % 2 == 0 else _two_axis_weights(rng)
    grid = _grid(rng, float(rng.uniform(1.0, 1.3)) * prof.T)
    m = Mixture(weights, prof)
    spec = {"weights": list(weights),
            "profile": {"kind": "cubic", "a": prof.a, "b": prof.b, "c": prof.c, "T": prof.T},
            "grid": {"t_max": grid.t_max, "n": grid.n}}
    if not prop3_preserves_nonP(m, grid):
        failures.append(CheckFailure(
            "prop3", i, "mixture of divisible-not-P maps left the Divisible class", spec))


def _prop4_trial(rng, i, failures):
    if i % 3 == 2:
        # permanent visit: truncated cosine parks exactly at the x_min=0
        # level, so the decision is structural and needs no margin guard
        w = float(rng.uniform(0.8, 3.0))
        weights = _two_axis_weights(rng)
        grid = _grid(rng, float(rng.uniform(1.2, 2.2)) * math.pi / (2.0 * w))
        m = Mixture(weights, TruncCosProfile(omega=w))
        spec = {"weights": list(weights), "profile": {"kind": "trunc_cos", "omega": w},
                "grid": {"t_max": grid.t_max, "n": grid.n}}
        predicted = prop4_divisible_condition(m, grid)
        verdict = classify(m.to_trajectory(grid), grid)
        if predicted != (verdict.level >= DivClass.DIVISIBLE):
            failures.append(CheckFailure(
                "prop4", i,
                f"level-dwell predicate says {predicted}, classifier says {verdict.label}",
                spec))
        return
    for _ in range(_MAX_RESAMPLES):
        w = float(rng.uniform(0.8, 3.0))
        if i % 3 == 0:
            profile = CosProfile(omega=w)
            pspec = {"kind": "cos", "omega": w}
        else:
            Z = float(rng.uniform(0.1, 0.5))
            profile = DampedCosProfile(decay=Z, omega=w)
            pspec = {"kind": "damped_cos", "omega": w, "Z": Z}
        weights = _positive_weights(rng) if rng.uniform() < 0.5 else _two_axis_weights(rng)
        grid = _grid(rng, float(rng.uniform(1.05, 1.6)) * math.pi / w)
        x_min = min(weights)
        level = -x_min / (1.0 - x_min)
        gap = float(np.min(profile.value(grid.times))) - level
        if abs(gap) <= _MARGIN:
            continue
        m = Mixture(weights, profile)
        spec = {"weights": list(weights), "profile": pspec,
                "grid": {"t_max": grid.t_max, "n": grid.n}}
        predicted = prop4_divisible_condition(m, grid)
        verdict = classify(m.to_trajectory(grid), grid)
        if predicted != (verdict.level >= DivClass.DIVISIBLE):
            failures.append(CheckFailure(
                "prop4", i,
                f"level-dwell predicate says {predicted}, classifier says {verdict.label}",
                spec))
        return
    raise RuntimeError("prop4 resampling failed")


def run_proposition_suite(n_trials: int = 50, seed: int = 0) -> tuple[SuiteReport, ...]:
    """Theorem checks of the four mixture predicates against the classifier."""
    reports = []
    for name, trial_fn in (("prop1", _prop1_trial), ("prop2", _prop2_trial),
                           ("prop3", _prop3_trial), ("prop4", _prop4_trial)):
        rng = np.random.default_rng(seed)
        start = time.perf_counter()
        failures: list[CheckFailure] = []
        for i in range(n_trials):
            trial_fn(rng, i, failures)
        reports.append(SuiteReport(name, n_trials, tuple(failures),
                                   time.perf_counter() - start))
    return tuple(reports)


# ---------------------------------------------------------------------------
# random rates for generator round-trip tests


def random_rate_triple(rng) -> RateTriple:
    """Smooth nonnegative rates with no divergences: a + b sin^2(c t + phi)."""

    def make(a, b, c, phi):
        return lambda t: a + b * math.sin(c * t + phi) ** 2

    gs = []
    for _ in range(3):
        a = float(rng.uniform(0.05, 0.6))
        b = float(rng.uniform(0.05, 0.6))
        c = float(rng.uniform(0.5, 2.0))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        gs.append(make(a, b, c, phi))
    return RateTriple(gs[0], gs[1], gs[2])
