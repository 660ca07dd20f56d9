"""Command-line driver.

Subcommands:

    classify   write verdict.json + eigs.csv for a trajectory/mixture spec
    rates      write rates.csv (singular bands skipped) + divergences.json
    mix-scan   classify every weight triple on a simplex lattice -> region.csv
    verify     run the randomized classifier-vs-oracle and proposition suites

Exit codes: 0 success, 1 verification failure, 2 input error.  All file
output is deterministic for a fixed spec, flags, and seed: CSV numbers are
rendered with 17 significant digits and JSON keys are sorted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .divisibility import classify
from .generator import rate_sum_limit, rates_from_eigs
from .mixtures import Mixture
from .specio import SpecError, load_spec, parse_profile, resolve_grid, trajectory_from_spec
from .trajectory import find_singular_points
from .verification import run_equivalence_suite, run_proposition_suite

__all__ = ["main"]


def _fmt(v) -> str:
    x = float(v)
    if x == 0.0:
        x = 0.0  # normalize -0.0 so output is platform-independent
    return f"{x:.17g}"


def _write_csv(path: Path, header: tuple[str, ...], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n")


def _out_dir(args) -> Path:
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _parse_weights(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise SpecError("--weights", f"expected x1,x2,x3, got {text!r}")
    try:
        w = tuple(float(p) for p in parts)
    except ValueError as e:
        raise SpecError("--weights", f"entries must be numbers ({e})") from e
    return w  # type: ignore[return-value]


def _check_tols(args) -> None:
    if not args.tol > 0.0:
        raise SpecError("--tol", f"must be positive, got {args.tol!r}")
    if args.zero_tol is not None and not args.zero_tol > 0.0:
        raise SpecError("--zero-tol", f"must be positive, got {args.zero_tol!r}")


def _load_trajectory(args):
    spec = load_spec(args.spec)
    weights = _parse_weights(args.weights) if args.weights else None
    return trajectory_from_spec(spec, args.t_max, args.n, weights)


def cmd_classify(args) -> int:
    _check_tols(args)
    tr, grid, _mixture = _load_trajectory(args)
    try:
        verdict = classify(tr, grid, tol=args.tol, zero_tol=args.zero_tol)
    except ValueError as e:
        raise SpecError("spec", f"not a physical evolution: {e}") from e
    out = _out_dir(args)
    _write_json(out / "verdict.json", verdict.to_json_dict())
    times = grid.times
    _write_csv(out / "eigs.csv", ("t", "l1", "l2", "l3"),
               np.column_stack([times, tr.eval_grid(times)]))
    print(verdict.label)
    return 0


_AXIS_PAIRS = ((1, 2), (1, 3), (2, 3))


def cmd_rates(args) -> int:
    _check_tols(args)
    tr, grid, _mixture = _load_trajectory(args)
    band = args.zero_tol if args.zero_tol is not None else tr.default_zero_tol
    times = grid.times
    lam = tr.eval_grid(times)
    ok = (lam > band).all(axis=1)
    if ok.any():
        gam = rates_from_eigs(tr, times[ok], zero_tol=band)
        rows = np.column_stack([times[ok], gam])
    else:
        rows = np.empty((0, 4))
    out = _out_dir(args)
    _write_csv(out / "rates.csv", ("t", "g1", "g2", "g3"), rows)

    sp = find_singular_points(tr, grid, band)
    merged: list[float] = []
    for t_star in sorted(v for v in sp.by_axis if math.isfinite(v)):
        if not merged or t_star - merged[-1] > 1e-9 * grid.t_max:
            merged.append(t_star)
    pair_sums = []
    for t_star in merged:
        for axes in _AXIS_PAIRS:
            lim = rate_sum_limit(tr, axes, t_star, zero_tol=band)
            pair_sums.append({
                "t_star": t_star,
                "axes": list(axes),
                "diverged": lim.diverged,
                "value": None if lim.diverged else lim.value,
                "error": None if lim.diverged else lim.error,
                "sign": int(math.copysign(1.0, lim.value)) if lim.diverged else None,
            })
    _write_json(out / "divergences.json",
                {"divergence_times": merged, "pair_sums": pair_sums})
    print(f"rates at {int(ok.sum())}/{times.size} grid times; "
          f"{len(merged)} divergence time(s)")
    return 0


def cmd_mix_scan(args) -> int:
    _check_tols(args)
    if args.resolution < 1:
        raise SpecError("--resolution", f"must be >= 1, got {args.resolution!r}")
    spec = load_spec(args.spec)
    if "profile" not in spec:
        raise SpecError("profile", "missing (mix-scan needs a shared profile)")
    profile = parse_profile(spec["profile"])
    grid = resolve_grid(spec, args.t_max, args.n)
    m = args.resolution
    rows = []

    def _classify_weights(w):
        tr = Mixture(w, profile).to_trajectory(grid)
        verdict = classify(tr, grid, tol=args.tol, zero_tol=args.zero_tol)
        rows.append((w[0], w[1], w[2], verdict.label))

    for i in range(m + 1):
        for j in range(m + 1 - i):
            _classify_weights((i / m, j / m, (m - i - j) / m))
    if m % 3 != 0:
        # the exact barycenter is off-lattice; append it so the scan always
        # contains the fully symmetric mixture
        _classify_weights((1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0))
    out = _out_dir(args)
    _write_csv(out / "region.csv", ("x1", "x2", "x3", "class"), rows)
    print(f"{len(rows)} weight triples classified")
    return 0


def cmd_verify(args) -> int:
    if args.trials < 0:
        raise SpecError("--trials", f"must be >= 0, got {args.trials!r}")
    eq = run_equivalence_suite(args.trials, seed=args.seed, inject_bug=args.inject_bug)
    props = run_proposition_suite(min(50, args.trials), seed=args.seed)
    print(eq.summary_line())
    for rep in props:
        print(rep.summary_line())
    if args.trials == 0:
        print("warning: 0 trials requested; result is vacuous")
    failures = eq.failures + tuple(f for rep in props for f in rep.failures)
    if failures:
        first = failures[0]
        print(f"first counterexample ({first.suite} trial {first.trial}): {first.message}")
        print(json.dumps(first.spec, sort_keys=True))
        return 1
    print("all verification suites passed")
    return 0


def _add_common(p: argparse.ArgumentParser, weights: bool = False) -> None:
    p.add_argument("--spec", required=True, help="path to a JSON trajectory/mixture spec")
    p.add_argument("--t-max", dest="t_max", type=float, default=None,
                   help="grid end time (overrides the spec)")
    p.add_argument("--n", type=int, default=None,
                   help="number of grid points (overrides the spec)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="inequality tolerance (default 1e-9)")
    p.add_argument("--zero-tol", dest="zero_tol", type=float, default=None,
                   help="zero band for eigenvalues (default: profile-dependent)")
    p.add_argument("--out", default=".", help="output directory (default: cwd)")
    if weights:
        p.add_argument("--weights", default=None,
                       help="x1,x2,x3 mixture weights (override the spec)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paulidyn",
        description="Divisibility analysis of qubit Pauli dynamical maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="divisibility verdict + eigenvalue table")
    _add_common(p, weights=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rates", help="time-local generator rates + divergence report")
    _add_common(p, weights=True)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("mix-scan", help="classify a simplex lattice of mixture weights")
    _add_common(p)
    p.add_argument("--resolution", type=int, default=20,
                   help="simplex lattice resolution m (default 20)")
    p.set_defaults(func=cmd_mix_scan)

    p = sub.add_parser("verify", help="randomized classifier-vs-oracle + proposition suites")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--trials", type=int, default=200,
                   help="equivalence-suite trials (default 200)")
    p.add_argument("--inject-bug", dest="inject_bug", action="store_true",
                   help="negative control: corrupt one comparison (run must fail)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
