"""Scalar eigenvalue profiles lambda(t) for time-dependent Pauli maps.

A profile is a real function on t >= 0 with lambda(0) = 1 and
|lambda(t)| <= 1 (parameter validation enforces this for every preset).
Presets:

    exp         lambda(t) = exp(-r t)
    cos         lambda(t) = cos(w t)
    abs_cos     lambda(t) = |cos(w t)|
    damped_cos  lambda(t) = exp(-Z t) cos(w t)
    trunc_cos   lambda(t) = cos(w t) for t <= pi/2w, 0 afterwards
    cubic       lambda(t) = (1/c)(1 - t/T)(a (t/T)^2 + b (t/T) + c) for t < T,
                0 afterwards; parameter window chosen so 0 <= lambda <= 1
                with an interior interval of increase
    samples     tabulated values with monotone (non-overshooting) cubic
                interpolation
    constant    fixed value (the undamped axis of a phase-damping map)
    affine      offset + scale * base(t) (convex mixtures)

value() and derivative() accept scalars or arrays.  derivative() is the
one-sided derivative from the right at kinks of the piecewise presets;
sampled profiles use a 5-point finite-difference stencil instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = [
    "ScalarProfile",
    "ExpProfile",
    "CosProfile",
    "AbsCosProfile",
    "DampedCosProfile",
    "TruncCosProfile",
    "CubicProfile",
    "SampledProfile",
    "ConstantProfile",
    "AffineProfile",
]


def _wrap(t, out):
    """Return a bare float for scalar input, the array otherwise."""
    if np.ndim(t) == 0:
        return float(out)
    return out


class ScalarProfile:
    """Base class; subclasses implement value() and derivative()."""

    def value(self, t):
        raise NotImplementedError

    def derivative(self, t):
        raise NotImplementedError

    def kinks_in(self, t_max: float) -> tuple[float, ...]:
        """Times in (0, t_max] where the derivative jumps."""
        return ()

    @property
    def is_sampled(self) -> bool:
        return False


@dataclass(frozen=True)
class ExpProfile(ScalarProfile):
    """lambda(t) = exp(-rate t), rate > 0."""

    rate: float

    def __post_init__(self):
        if not (self.rate > 0.0 and math.isfinite(self.rate)):
            raise ValueError(f"rate must be positive and finite, got {self.rate!r}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.exp(-self.rate * t))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, -self.rate * np.exp(-self.rate * t))


@dataclass(frozen=True)
class CosProfile(ScalarProfile):
    """lambda(t) = cos(omega t), omega > 0."""

    omega: float

    def __post_init__(self):
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.cos(self.omega * t))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, -self.omega * np.sin(self.omega * t))


@dataclass(frozen=True)
class AbsCosProfile(ScalarProfile):
    """lambda(t) = |cos(omega t)|; kinks at odd multiples of pi/2omega."""

    omega: float

    def __post_init__(self):
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.abs(np.cos(self.omega * t)))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        c = np.cos(self.omega * t)
        s = np.sign(c)
        d = -self.omega * np.sin(self.omega * t) * s
        # exactly on a kink the right-hand branch has positive slope omega*|sin|
        d = np.where(s == 0.0, self.omega * np.abs(np.sin(self.omega * t)), d)
        return _wrap(t, d)

    def kinks_in(self, t_max):
        step = math.pi / self.omega
        first = 0.5 * step
        count = int(math.floor((t_max - first) / step)) + 1 if t_max >= first else 0
        return tuple(first + k * step for k in range(count))


@dataclass(frozen=True)
class DampedCosProfile(ScalarProfile):
    """lambda(t) = exp(-decay t) cos(omega t), decay > 0, omega > 0."""

    decay: float
    omega: float

    def __post_init__(self):
        if not (self.decay > 0.0 and math.isfinite(self.decay)):
            raise ValueError(f"decay must be positive and finite, got {self.decay!r}")
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.exp(-self.decay * t) * np.cos(self.omega * t))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        e = np.exp(-self.decay * t)
        return _wrap(
            t,
            e * (-self.decay * np.cos(self.omega * t) - self.omega * np.sin(self.omega * t)),
        )


@dataclass(frozen=True)
class TruncCosProfile(ScalarProfile):
    """lambda(t) = cos(omega t) up to the first zero pi/2omega, 0 afterwards."""

    omega: float

    def __post_init__(self):
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega!r}")

    @property
    def cutoff(self) -> float:
        return 0.5 * math.pi / self.omega

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.where(t <= self.cutoff, np.cos(self.omega * t), 0.0))

    def derivative(self, t):
        # right-hand derivative at the cutoff is the flat branch, hence 0
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.where(t < self.cutoff, -self.omega * np.sin(self.omega * t), 0.0))

    def kinks_in(self, t_max):
        return (self.cutoff,) if t_max >= self.cutoff else ()


@dataclass(frozen=True)
class CubicProfile(ScalarProfile):
    """Cubic decay to zero with one interior interval of increase.

    lambda(t) = (1/c)(1 - u)(a u^2 + b u + c) with u = t/T for t < T, and 0
    for t >= T.  The parameter window

        0 < b < a,    (a + b)^2 / (4a) <= c < (a^2 + a b + b^2) / (3a)

    guarantees 0 <= lambda(t) <= 1 on [0, T] (the lower bound on c caps the
    profile at 1) while the upper bound forces lambda'(t) > 0 somewhere in
    (0, T).  The resulting map is divisible but not P-divisible.
    """

    a: float
    b: float
    c: float
    T: float

    def __post_init__(self):
        for name in ("a", "b", "c", "T"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if not self.T > 0.0:
            raise ValueError(f"T must be positive, got {self.T!r}")
        if not (0.0 < self.b < self.a):
            raise ValueError(f"need 0 < b < a, got a={self.a!r}, b={self.b!r}")
        lo = (self.a + self.b) ** 2 / (4.0 * self.a)
        hi = (self.a * self.a + self.a * self.b + self.b * self.b) / (3.0 * self.a)
        if not (lo <= self.c < hi):
            raise ValueError(
                f"need (a+b)^2/(4a) <= c < (a^2+ab+b^2)/(3a), "
                f"i.e. {lo!r} <= c < {hi!r}, got c={self.c!r}"
            )

    def value(self, t):
        t = np.asarray(t, dtype=float)
        u = t / self.T
        poly = (1.0 - u) * (self.a * u * u + self.b * u + self.c) / self.c
        return _wrap(t, np.where(t < self.T, poly, 0.0))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        u = t / self.T
        dpoly = (-3.0 * self.a * u * u + 2.0 * (self.a - self.b) * u + (self.b - self.c)) / (
            self.c * self.T
        )
        return _wrap(t, np.where(t < self.T, dpoly, 0.0))

    def kinks_in(self, t_max):
        return (self.T,) if t_max >= self.T else ()


@dataclass(frozen=True)
class SampledProfile(ScalarProfile):
    """Tabulated profile with monotone cubic interpolation.

    The interpolant (PCHIP) never overshoots the range of neighbouring
    samples, so tabulated monotone decays stay monotone and values stay
    inside [-1, 1] whenever the samples do.  Past the last sample the value
    is held constant.  Derivatives use a 5-point finite-difference stencil
    with the local sample spacing (one-sided at the ends).
    """

    times: tuple[float, ...]
    values: tuple[float, ...]
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tt = np.asarray(self.times, dtype=float)
        vv = np.asarray(self.values, dtype=float)
        if tt.ndim != 1 or tt.shape != vv.shape or tt.size < 4:
            raise ValueError("times and values must be equal-length 1-d with >= 4 samples")
        if not np.all(np.diff(tt) > 0.0):
            raise ValueError("times must be strictly increasing")
        if tt[0] != 0.0:
            raise ValueError(f"times must start at 0, got {tt[0]!r}")
        if abs(vv[0] - 1.0) > 1e-9:
            raise ValueError(f"values[0] must be 1 (lambda(0) = 1), got {vv[0]!r}")
        if np.abs(vv).max() > 1.0 + 1e-9:
            raise ValueError("values must lie in [-1, 1]")
        object.__setattr__(self, "times", tuple(float(x) for x in tt))
        object.__setattr__(self, "values", tuple(float(x) for x in vv))
        object.__setattr__(self, "_interp", PchipInterpolator(tt, vv, extrapolate=False))

    @property
    def is_sampled(self) -> bool:
        return True

    def value(self, t):
        t = np.asarray(t, dtype=float)
        hi = self.times[-1]
        out = np.asarray(self._interp(np.clip(t, 0.0, hi)), dtype=float)
        return _wrap(t, out)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        x = np.atleast_1d(np.clip(t, 0.0, self.times[-1])).astype(float)
        tt = np.asarray(self.times)
        lo, hi = tt[0], tt[-1]
        idx = np.clip(np.searchsorted(tt, x, side="right") - 1, 0, tt.size - 2)
        h = tt[idx + 1] - tt[idx]
        f = self.value

        d = np.empty_like(x)
        central = (x - 2.0 * h >= lo) & (x + 2.0 * h <= hi)
        forward = ~central & (x + 4.0 * h <= hi)
        backward = ~central & ~forward & (x - 4.0 * h >= lo)
        rest = ~central & ~forward & ~backward

        if central.any():
            xm, hm = x[central], h[central]
            d[central] = (
                f(xm - 2.0 * hm) - 8.0 * f(xm - hm) + 8.0 * f(xm + hm) - f(xm + 2.0 * hm)
            ) / (12.0 * hm)
        if forward.any():
            xm, hm = x[forward], h[forward]
            d[forward] = (
                -25.0 * f(xm)
                + 48.0 * f(xm + hm)
                - 36.0 * f(xm + 2.0 * hm)
                + 16.0 * f(xm + 3.0 * hm)
                - 3.0 * f(xm + 4.0 * hm)
            ) / (12.0 * hm)
        if backward.any():
            xm, hm = x[backward], h[backward]
            d[backward] = (
                25.0 * f(xm)
                - 48.0 * f(xm - hm)
                + 36.0 * f(xm - 2.0 * hm)
                - 16.0 * f(xm - 3.0 * hm)
                + 3.0 * f(xm - 4.0 * hm)
            ) / (12.0 * hm)
        if rest.any():
            # domain shorter than the stencil: clamped first difference
            xm, hm = x[rest], h[rest]
            a = np.maximum(xm - hm, lo)
            b = np.minimum(xm + hm, hi)
            d[rest] = (f(b) - f(a)) / (b - a)

        out = d[0] if scalar else d
        return _wrap(t, out)


@dataclass(frozen=True)
class ConstantProfile(ScalarProfile):
    """Constant profile, used for the undamped axis of a phase-damping map."""

    const: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.const) or abs(self.const) > 1.0 + 1e-9:
            raise ValueError(f"const must lie in [-1, 1], got {self.const!r}")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.full_like(t, self.const, dtype=float))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, np.zeros_like(t, dtype=float))


@dataclass(frozen=True)
class AffineProfile(ScalarProfile):
    """offset + scale * base(t).

    Convex mixtures of phase-damping maps have eigenvalues
    x_alpha + (1 - x_alpha) lambda(t), i.e. offset = x_alpha and
    scale = 1 - x_alpha; then lambda_alpha(0) = 1 automatically.
    """

    offset: float
    scale: float
    base: ScalarProfile

    def __post_init__(self):
        if not (math.isfinite(self.offset) and math.isfinite(self.scale)):
            raise ValueError("offset and scale must be finite")

    @property
    def is_sampled(self) -> bool:
        return self.base.is_sampled

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, self.offset + self.scale * np.asarray(self.base.value(t), dtype=float))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return _wrap(t, self.scale * np.asarray(self.base.derivative(t), dtype=float))

    def kinks_in(self, t_max):
        return self.base.kinks_in(t_max)
