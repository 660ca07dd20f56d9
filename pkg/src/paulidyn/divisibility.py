"""Divisibility hierarchy of Pauli dynamical maps.

Verdict levels, ordered:

    Indivisible < Divisible < PDivisible < CPDivisible

`classify` applies the analytic criteria to the eigenvalue trajectory:

    divisible      lambda_alpha(t) >= 0 on the grid and no eigenvalue comes
                   back out of the zero band after reaching it,
    P-divisible    divisible and every d lambda_alpha / dt <= 0,
    CP-divisible   P-divisible, never exactly two nonzero eigenvalues, and
                   at every grid time where all eigenvalues are positive

                       2 (d/dt) ln lambda_alpha >= (d/dt) ln(l1 l2 l3)

                   for each alpha, evaluated with denominators cleared:
                   g_a = l'_a l_b l_c - l_a l'_b l_c - l_a l_b l'_c >= 0
                   (g_a equals 2 gamma_a l1 l2 l3, the time-local rate times
                   a positive factor, so the test is the sign of the rate).

`oracle_classify` is the independent cross-check: it builds two-point
propagator candidates V(t, s) from eigenvalue ratios for a large set of
grid pairs and tests each with the complete-positivity / positivity
predicates only.  The two routes share nothing but trajectory evaluation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .channels import BlochState, PauliChannel, cp_mask, positivity_mask
from .trajectory import (
    EigTrajectory,
    Grid,
    SingularPoints,
    find_singular_points,
    find_zero_events,
    validate,
)

__all__ = [
    "DivClass",
    "Certificate",
    "DivisibilityVerdict",
    "IndivisibleAt",
    "Propagator",
    "WitnessHit",
    "check_divisible",
    "check_p_divisible",
    "check_cp_divisible",
    "classify",
    "propagator",
    "oracle_classify",
    "trace_norm_witness",
]

DEFAULT_TOL = 1e-9


class DivClass(enum.IntEnum):
    """Divisibility classes; comparisons follow the hierarchy order."""

    INDIVISIBLE = 0
    DIVISIBLE = 1
    P_DIVISIBLE = 2
    CP_DIVISIBLE = 3

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    DivClass.INDIVISIBLE: "Indivisible",
    DivClass.DIVISIBLE: "Divisible",
    DivClass.P_DIVISIBLE: "PDivisible",
    DivClass.CP_DIVISIBLE: "CPDivisible",
}


@dataclass(frozen=True)
class Certificate:
    """A concrete witness for the failure of one criterion."""

    condition: str
    t: float
    detail: dict

    def to_json_dict(self) -> dict:
        return {"condition": self.condition, "t": _json_num(self.t),
                "detail": {k: _json_num(v) for k, v in sorted(self.detail.items())}}


@dataclass(frozen=True)
class DivisibilityVerdict:
    level: DivClass
    certificates: tuple[Certificate, ...]
    singular_points: SingularPoints
    grid: Grid
    tol: float
    zero_tol: float
    method: str  # "analytic" or "oracle"
    metadata: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.level.label

    def to_json_dict(self) -> dict:
        """JSON-serializable verdict; +inf singular times become null."""
        return {
            "class": self.label,
            "certificates": [c.to_json_dict() for c in self.certificates],
            "singular_points": [_json_num(t) for t in self.singular_points.ordered],
            "singular_axes": [_json_num(t) for t in self.singular_points.by_axis],
            "grid": {
                "t_max": self.grid.t_max,
                "n": self.grid.n,
                "tol": self.tol,
                "zero_tol": self.zero_tol,
                "grid_relative": True,
            },
            "method": self.method,
            "metadata": {k: _json_num(v) for k, v in sorted(self.metadata.items())},
        }


def _json_num(v):
    if isinstance(v, float):
        if math.isinf(v):
            return None
        return v
    if isinstance(v, (list, tuple)):
        return [_json_num(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_num(x) for k, x in sorted(v.items())}
    if isinstance(v, (np.floating, np.integer)):
        return _json_num(float(v)) if isinstance(v, np.floating) else int(v)
    return v


class IndivisibleAt(Exception):
    """No propagator exists between the two times."""

    def __init__(self, axis: int, s: float, t: float, lam_s: float, lam_t: float):
        self.axis = axis
        self.s = s
        self.t = t
        self.lam_s = lam_s
        self.lam_t = lam_t
        super().__init__(
            f"no propagator on ({s!r}, {t!r}): lambda_{axis}(s) = {lam_s!r} is inside "
            f"the zero band but lambda_{axis}(t) = {lam_t!r} is not"
        )


@dataclass(frozen=True)
class Propagator:
    """Two-point propagator candidate V(t, s) in the eigenvalue picture."""

    s: float
    t: float
    channel: PauliChannel


# ---------------------------------------------------------------------------
# shared analysis pass


@dataclass(frozen=True)
class _Analysis:
    times: np.ndarray
    eigs: np.ndarray
    derivs: np.ndarray
    events: tuple
    band: float


def _analyze(tr: EigTrajectory, grid: Grid | None, zero_tol: float | None) -> _Analysis:
    g = tr.grid if grid is None else grid
    band = tr.default_zero_tol if zero_tol is None else zero_tol
    times = g.times
    return _Analysis(
        times=times,
        eigs=tr.eval_grid(times),
        derivs=tr.derivative_grid(times),
        events=find_zero_events(tr, g, band),
        band=band,
    )


def _first_per_axis(times, mask, condition, values, extra=None):
    """One certificate per axis: first offending grid time plus a count."""
    certs = []
    for a in range(3):
        idx = np.nonzero(mask[:, a])[0]
        if idx.size:
            detail = {
                "axis": a + 1,
                "value": float(values[idx[0], a]),
                "count": int(idx.size),
                "last_t": float(times[idx[-1]]),
            }
            if extra:
                detail.update(extra)
            certs.append(Certificate(condition, t=float(times[idx[0]]), detail=detail))
    return certs


def _divisible_certs(an: _Analysis, tol: float) -> list[Certificate]:
    certs = _first_per_axis(an.times, an.eigs < -tol, "negative_eigenvalue", an.eigs)
    for e in an.events:
        if not e.permanent:
            certs.append(
                Certificate(
                    "eigenvalue_revival",
                    t=float(e.revival_t),
                    detail={"axis": e.axis, "zero_t": e.t, "value": e.revival_value},
                )
            )
    certs.sort(key=lambda c: (c.t, c.condition))
    return certs


def _p_certs(an: _Analysis, tol: float) -> list[Certificate]:
    return _first_per_axis(an.times, an.derivs > tol, "positive_derivative", an.derivs)


def _cp_certs(an: _Analysis, tol: float) -> list[Certificate]:
    certs: list[Certificate] = []
    nonzero = np.abs(an.eigs) > an.band
    counts = nonzero.sum(axis=1)
    two = np.nonzero(counts == 2)[0]
    if two.size:
        i = two[0]
        certs.append(
            Certificate(
                "two_nonzero_eigenvalues",
                t=float(an.times[i]),
                detail={
                    "axes": [a + 1 for a in range(3) if nonzero[i, a]],
                    "count": int(two.size),
                    "last_t": float(an.times[two[-1]]),
                },
            )
        )

    # rate inequality, denominators cleared: g_a = 2 gamma_a * l1 l2 l3
    l, d = an.eigs, an.derivs
    all_pos = (an.eigs > an.band).all(axis=1)
    g = np.empty_like(l)
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        g[:, a] = d[:, a] * l[:, b] * l[:, c] - l[:, a] * d[:, b] * l[:, c] - l[:, a] * l[:, b] * d[:, c]
    bad = (g < -tol) & all_pos[:, None]
    certs.extend(_first_per_axis(an.times, bad, "generator_rate_negative", g))
    certs.sort(key=lambda c: (c.t, c.condition))
    return certs


# ---------------------------------------------------------------------------
# public checks and the classifier


def check_divisible(tr: EigTrajectory, grid: Grid | None = None,
                    tol: float = DEFAULT_TOL, zero_tol: float | None = None):
    """Divisibility: nonnegative eigenvalues, and no revival after the zero band.

    Returns (ok, certificates).  A merely-touched zero counts as a revival.
    """
    an = _analyze(tr, grid, zero_tol)
    certs = _divisible_certs(an, tol)
    return (not certs), certs


def check_p_divisible(tr: EigTrajectory, grid: Grid | None = None,
                      tol: float = DEFAULT_TOL, zero_tol: float | None = None):
    """P-divisibility: divisible and every eigenvalue non-increasing."""
    an = _analyze(tr, grid, zero_tol)
    certs = _divisible_certs(an, tol)
    if certs:
        return False, certs
    certs = _p_certs(an, tol)
    return (not certs), certs


def check_cp_divisible(tr: EigTrajectory, grid: Grid | None = None,
                       tol: float = DEFAULT_TOL, zero_tol: float | None = None):
    """CP-divisibility: P-divisible, nonnegative time-local rates where the
    map is invertible, and never exactly two nonzero eigenvalues."""
    an = _analyze(tr, grid, zero_tol)
    certs = _divisible_certs(an, tol)
    if certs:
        return False, certs
    certs = _p_certs(an, tol)
    if certs:
        return False, certs
    certs = _cp_certs(an, tol)
    return (not certs), certs


def _near_zero_axes(an: _Analysis) -> list[int]:
    """Axes whose grid minimum of |lambda| sits just above the zero band.

    Such an axis straddles the band at grid resolution; whether it truly
    vanishes is not decidable at this tolerance, so it is flagged instead."""
    m = np.abs(an.eigs).min(axis=0)
    return [a + 1 for a in range(3) if an.band < m[a] <= 1e3 * an.band]


def classify(tr: EigTrajectory, grid: Grid | None = None,
             tol: float = DEFAULT_TOL, zero_tol: float | None = None) -> DivisibilityVerdict:
    """Analytic divisibility verdict with certificates for the first failure.

    Raises ValueError if the trajectory itself is not completely positive
    at some grid time (garbage in, no verdict out).
    """
    g = tr.grid if grid is None else grid
    bad = validate(tr, g, tol)
    if bad:
        raise ValueError(
            f"trajectory is not completely positive at t={bad[0].t!r}: eigs={bad[0].eigs!r}"
        )
    an = _analyze(tr, grid, zero_tol)
    certs = _divisible_certs(an, tol)
    level = DivClass.INDIVISIBLE
    if not certs:
        certs = _p_certs(an, tol)
        level = DivClass.DIVISIBLE
        if not certs:
            certs = _cp_certs(an, tol)
            level = DivClass.P_DIVISIBLE
            if not certs:
                level = DivClass.CP_DIVISIBLE
    sp = find_singular_points(tr, g, an.band)
    return DivisibilityVerdict(
        level=level,
        certificates=tuple(certs),
        singular_points=sp,
        grid=g,
        tol=tol,
        zero_tol=an.band,
        method="analytic",
        metadata={
            "near_zero_axes": _near_zero_axes(an),
            "kinks": list(tr.kink_times(g.t_max)),
        },
    )


# ---------------------------------------------------------------------------
# propagator and the brute-force oracle


def propagator(tr: EigTrajectory, s: float, t: float,
               zero_tol: float | None = None) -> Propagator:
    """Eigenvalue ratios of V(t, s), with the generalized-inverse convention.

    mu_alpha = lambda_alpha(t) / lambda_alpha(s) where lambda_alpha(s) is
    outside the zero band; 0/0 inside the band is resolved to 0 (the axis is
    already dead); a zero at s followed by a nonzero value at t means no
    propagator exists and raises IndivisibleAt.
    """
    if not (0.0 <= s <= t):
        raise ValueError(f"need 0 <= s <= t, got s={s!r}, t={t!r}")
    band = tr.default_zero_tol if zero_tol is None else zero_tol
    lam_s = tr.eval(s).eigs
    lam_t = tr.eval(t).eigs
    mus = []
    for a in range(3):
        vs, vt = lam_s[a], lam_t[a]
        if abs(vs) <= band:
            if abs(vt) <= band:
                mus.append(0.0)
            else:
                raise IndivisibleAt(a + 1, s, t, vs, vt)
        else:
            mus.append(vt / vs)
    return Propagator(s=s, t=t, channel=PauliChannel(*mus))


def _pair_indices(m: int, event_idx: np.ndarray, seed: int,
                  max_full: int, n_random: int) -> tuple[np.ndarray, np.ndarray]:
    """Ordered index pairs (i < j).  All pairs for small grids; adjacent +
    random + zero-event-anchored + from-origin pairs for large ones."""
    if m <= max_full:
        ii, jj = np.triu_indices(m, k=1)
        return ii, jj
    parts_i = [np.arange(m - 1), np.zeros(m - 1, dtype=int)]
    parts_j = [np.arange(1, m), np.arange(1, m)]
    rng = np.random.default_rng(seed)
    a = rng.integers(0, m, size=n_random)
    b = rng.integers(0, m, size=n_random)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keep = lo < hi
    parts_i.append(lo[keep])
    parts_j.append(hi[keep])
    for e in event_idx:
        if e + 1 < m:
            parts_i.append(np.full(m - 1 - e, e, dtype=int))
            parts_j.append(np.arange(e + 1, m))
        if e > 0:
            parts_i.append(np.arange(e))
            parts_j.append(np.full(e, e, dtype=int))
    ii = np.concatenate(parts_i)
    jj = np.concatenate(parts_j)
    flat = np.unique(ii.astype(np.int64) * m + jj)
    return (flat // m).astype(int), (flat % m).astype(int)


def oracle_classify(tr: EigTrajectory, grid: Grid | None = None,
                    tol: float = DEFAULT_TOL, zero_tol: float | None = None,
                    seed: int = 0, max_full: int = 400,
                    n_random_pairs: int = 10_000) -> DivisibilityVerdict:
    """Brute-force verdict from two-point propagator candidates alone.

    The pair grid is the evaluation grid augmented with the refined
    zero-event times, so a pair (t_zero, t) exists even when the grid
    misses the zero.  For every ordered pair:

      * an in-band eigenvalue at s followed by an out-of-band value at t
        admits no propagator -> Indivisible; an eigenvalue sign change
        across the pair implies (continuity) an interior zero followed by
        a nonzero value, so it is the same failure;
      * otherwise the ratio triple is tested with the CP and positivity
        predicates: all CP -> CPDivisible, all positive -> PDivisible,
        else Divisible.
    """
    g = tr.grid if grid is None else grid
    band = tr.default_zero_tol if zero_tol is None else zero_tol
    base = g.times
    events = find_zero_events(tr, g, band)
    extra = sorted({e.t for e in events})
    all_times = np.unique(np.concatenate([base, np.asarray(extra, dtype=float)])) if extra else base
    eigs = tr.eval_grid(all_times)
    m = all_times.size
    event_idx = np.searchsorted(all_times, np.asarray(extra, dtype=float)) if extra else np.array([], dtype=int)

    ii, jj = _pair_indices(m, event_idx, seed, max_full, n_random_pairs)
    order = np.lexsort((jj, ii))
    ii, jj = ii[order], jj[order]
    ls, lt = eigs[ii], eigs[jj]
    zs = np.abs(ls) <= band
    zt = np.abs(lt) <= band
    undefined = zs & ~zt
    signflip = ~zs & ~zt & (ls * lt < 0.0)
    bad = undefined | signflip

    sp = find_singular_points(tr, g, band)
    meta = {"n_pairs": int(ii.size), "n_times": int(m), "n_zero_events": len(events)}

    def _verdict(level, certs):
        return DivisibilityVerdict(
            level=level,
            certificates=tuple(certs),
            singular_points=sp,
            grid=g,
            tol=tol,
            zero_tol=band,
            method="oracle",
            metadata=meta,
        )

    bad_any = bad.any(axis=1)
    if bad_any.any():
        k = int(np.nonzero(bad_any)[0][0])
        a = int(np.nonzero(bad[k])[0][0])
        cert = Certificate(
            "propagator_undefined",
            t=float(all_times[jj[k]]),
            detail={
                "axis": a + 1,
                "s": float(all_times[ii[k]]),
                "lambda_s": float(ls[k, a]),
                "lambda_t": float(lt[k, a]),
            },
        )
        return _verdict(DivClass.INDIVISIBLE, [cert])

    denom = np.where(zs, 1.0, ls)
    mu = np.where(zs, 0.0, lt / denom)
    cp_ok = cp_mask(mu, tol)
    if cp_ok.all():
        return _verdict(DivClass.CP_DIVISIBLE, [])
    pos_ok = positivity_mask(mu, tol)
    if pos_ok.all():
        k = int(np.nonzero(~cp_ok)[0][0])
        cert = Certificate(
            "propagator_not_cp",
            t=float(all_times[jj[k]]),
            detail={"s": float(all_times[ii[k]]), "eigs": [float(v) for v in mu[k]]},
        )
        return _verdict(DivClass.P_DIVISIBLE, [cert])
    k = int(np.nonzero(~pos_ok)[0][0])
    cert = Certificate(
        "propagator_not_positive",
        t=float(all_times[jj[k]]),
        detail={"s": float(all_times[ii[k]]), "eigs": [float(v) for v in mu[k]]},
    )
    return _verdict(DivClass.DIVISIBLE, [cert])


# ---------------------------------------------------------------------------
# trace-norm witness


@dataclass(frozen=True)
class WitnessHit:
    """A Hermitian operator whose trace norm grew somewhere on the grid."""

    t: float
    state: BlochState
    rate: float


def _fibonacci_sphere(k: int) -> np.ndarray:
    i = np.arange(k)
    z = 1.0 - (2.0 * i + 1.0) / k
    phi = i * (math.pi * (3.0 - math.sqrt(5.0)))
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def trace_norm_witness(tr: EigTrajectory, grid: Grid | None = None,
                       n_directions: int = 64,
                       x0_values: tuple[float, ...] = (0.0, 0.5, -0.5, 1.0, -1.0),
                       tol: float = DEFAULT_TOL,
                       max_hits: int = 10_000) -> list[WitnessHit]:
    """Hermitian operators whose trace norm increases along the trajectory.

    Probes a deterministic low-discrepancy direction set (Fibonacci sphere)
    times the listed scalar parts and reports every grid step where the
    finite-difference derivative of ||Lambda(t)[X]||_1 exceeds tol, up to
    max_hits entries.  Empty for every P-divisible trajectory.
    """
    g = tr.grid if grid is None else grid
    times = g.times
    eigs = tr.eval_grid(times)
    dirs = _fibonacci_sphere(n_directions)
    scaled = eigs[:, None, :] * dirs[None, :, :]
    r = np.sqrt((scaled * scaled).sum(axis=-1))  # (n, k)
    dt = np.diff(times)[:, None]
    hits: list[WitnessHit] = []
    for x0 in x0_values:
        norms = np.abs(x0 + r) + np.abs(x0 - r)
        rates = (norms[1:] - norms[:-1]) / dt
        for i, j in np.argwhere(rates > tol):
            hits.append(
                WitnessHit(
                    t=float(times[i + 1]),
                    state=BlochState(float(x0), *(float(v) for v in dirs[j])),
                    rate=float(rates[i, j]),
                )
            )
            if len(hits) >= max_hits:
                return hits
    return hits
