"""JSON spec files for trajectories and mixtures.

Two shapes are accepted:

  * trajectory spec -- {"profile": {...}, "axes": "phase_damping:<1|2|3>"
    or {"l1": {...}, "l2": {...}, "l3": {...}}, "grid": {"t_max": .., "n": ..}}
  * mixture spec -- {"weights": [x1, x2, x3], "profile": {...}} with an
    optional "grid".

A profile object is {"kind": <preset>, ...params} with the presets

    exp(r) | cos(omega) | abs_cos(omega) | damped_cos(omega, Z)
    trunc_cos(omega) | cubic(a, b, c, T) | samples(times, values)

Every failure raises SpecError carrying the dotted path of the offending
field, so the CLI can report exactly what is wrong and exit 2.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .mixtures import Mixture
from .profiles import (
    AbsCosProfile,
    CosProfile,
    CubicProfile,
    DampedCosProfile,
    ExpProfile,
    SampledProfile,
    ScalarProfile,
    TruncCosProfile,
)
from .trajectory import EigTrajectory, Grid, phase_damping

__all__ = ["SpecError", "load_spec", "parse_profile", "resolve_grid", "trajectory_from_spec"]

MIN_GRID_POINTS = 16


class SpecError(Exception):
    """A spec file field is missing, has the wrong type, or an invalid value."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


def load_spec(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise SpecError(str(path), f"cannot read spec file ({e})") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(str(path), f"invalid JSON ({e})") from e
    if not isinstance(obj, dict):
        raise SpecError(str(path), "top level must be a JSON object")
    return obj


def _number(obj: dict, key: str, field: str) -> float:
    if key not in obj:
        raise SpecError(f"{field}.{key}", "missing required number")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SpecError(f"{field}.{key}", f"must be a number, got {v!r}")
    return float(v)


def _number_list(obj: dict, key: str, field: str) -> list[float]:
    if key not in obj:
        raise SpecError(f"{field}.{key}", "missing required array of numbers")
    v = obj[key]
    if not isinstance(v, list) or any(
        isinstance(x, bool) or not isinstance(x, (int, float)) for x in v
    ):
        raise SpecError(f"{field}.{key}", "must be an array of numbers")
    return [float(x) for x in v]


_PROFILE_PARAMS = {
    "exp": ("r",),
    "cos": ("omega",),
    "abs_cos": ("omega",),
    "damped_cos": ("omega", "Z"),
    "trunc_cos": ("omega",),
    "cubic": ("a", "b", "c", "T"),
    "samples": ("times", "values"),
}


def parse_profile(obj, field: str = "profile") -> ScalarProfile:
    if not isinstance(obj, dict):
        raise SpecError(field, f"must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind is None:
        raise SpecError(f"{field}.kind", "missing required profile kind")
    if kind not in _PROFILE_PARAMS:
        raise SpecError(
            f"{field}.kind",
            f"unknown profile kind {kind!r}; expected one of {sorted(_PROFILE_PARAMS)}",
        )
    allowed = set(_PROFILE_PARAMS[kind]) | {"kind"}
    for key in obj:
        if key not in allowed:
            raise SpecError(f"{field}.{key}", f"unexpected field for kind {kind!r}")
    try:
        if kind == "exp":
            return ExpProfile(rate=_number(obj, "r", field))
        if kind == "cos":
            return CosProfile(omega=_number(obj, "omega", field))
        if kind == "abs_cos":
            return AbsCosProfile(omega=_number(obj, "omega", field))
        if kind == "damped_cos":
            return DampedCosProfile(decay=_number(obj, "Z", field),
                                    omega=_number(obj, "omega", field))
        if kind == "trunc_cos":
            return TruncCosProfile(omega=_number(obj, "omega", field))
        if kind == "cubic":
            return CubicProfile(a=_number(obj, "a", field), b=_number(obj, "b", field),
                                c=_number(obj, "c", field), T=_number(obj, "T", field))
        return SampledProfile(times=tuple(_number_list(obj, "times", field)),
                              values=tuple(_number_list(obj, "values", field)))
    except ValueError as e:
        raise SpecError(field, str(e)) from e


def resolve_grid(spec: dict, t_max: float | None = None, n: int | None = None,
                 field: str = "grid") -> Grid:
    """Grid from the spec's "grid" object, with flag overrides taking precedence."""
    gobj = spec.get("grid")
    if gobj is not None and not isinstance(gobj, dict):
        raise SpecError(field, "must be an object")
    if t_max is None and gobj is not None and "t_max" in gobj:
        t_max = _number(gobj, "t_max", field)
    if n is None and gobj is not None and "n" in gobj:
        nv = gobj["n"]
        if isinstance(nv, bool) or not isinstance(nv, int):
            raise SpecError(f"{field}.n", f"must be an integer, got {nv!r}")
        n = nv
    if t_max is None:
        raise SpecError(f"{field}.t_max", "missing (provide in the spec or via --t-max)")
    if n is None:
        raise SpecError(f"{field}.n", "missing (provide in the spec or via --n)")
    if not t_max > 0.0:
        raise SpecError(f"{field}.t_max", f"must be positive, got {t_max!r}")
    if n < MIN_GRID_POINTS:
        raise SpecError(f"{field}.n", f"must be at least {MIN_GRID_POINTS}, got {n!r}")
    return Grid(float(t_max), int(n))


_AXES_RE = re.compile(r"^phase_damping:([123])$")


def trajectory_from_spec(spec: dict, t_max: float | None = None, n: int | None = None,
                         weights: tuple[float, float, float] | None = None,
                         ) -> tuple[EigTrajectory, Grid, Mixture | None]:
    """Build the trajectory a spec file describes.

    Mixture specs (a "weights" array, or an explicit weights override) use
    the shared profile; trajectory specs use "axes".  Returns the mixture
    object too when there is one, so callers can run mixture predicates.
    """
    if not isinstance(spec, dict):
        raise SpecError("spec", "must be a JSON object")
    grid = resolve_grid(spec, t_max, n)
    if weights is not None or "weights" in spec:
        if "profile" not in spec:
            raise SpecError("profile", "missing (mixture specs need a shared profile)")
        profile = parse_profile(spec["profile"])
        if weights is None:
            w = _number_list(spec, "weights", "spec")
            if len(w) != 3:
                raise SpecError("spec.weights", f"must have exactly 3 entries, got {len(w)}")
            weights = (w[0], w[1], w[2])
        try:
            mixture = Mixture(weights, profile)
        except ValueError as e:
            raise SpecError("spec.weights", str(e)) from e
        return mixture.to_trajectory(grid), grid, mixture
    axes = spec.get("axes")
    if axes is None:
        raise SpecError("axes", 'missing (use "phase_damping:<1|2|3>" or {"l1","l2","l3"})')
    if isinstance(axes, str):
        m = _AXES_RE.match(axes)
        if m is None:
            raise SpecError("axes", f'must match "phase_damping:<1|2|3>", got {axes!r}')
        if "profile" not in spec:
            raise SpecError("profile", "missing (phase-damping specs need a profile)")
        profile = parse_profile(spec["profile"])
        return phase_damping(profile, int(m.group(1)), grid), grid, None
    if isinstance(axes, dict):
        for key in axes:
            if key not in ("l1", "l2", "l3"):
                raise SpecError(f"axes.{key}", 'unexpected field (expected "l1", "l2", "l3")')
        profiles = []
        for key in ("l1", "l2", "l3"):
            if key not in axes:
                raise SpecError(f"axes.{key}", "missing eigenvalue profile")
            profiles.append(parse_profile(axes[key], field=f"axes.{key}"))
        return EigTrajectory(tuple(profiles), grid), grid, None  # type: ignore[arg-type]
    raise SpecError("axes", f"must be a string or object, got {type(axes).__name__}")
