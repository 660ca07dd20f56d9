"""Eigenvalue trajectories: grids, zero-event scanning, singular points."""

import math

import numpy as np
import pytest

from paulidyn import (
    AbsCosProfile,
    ConstantProfile,
    CosProfile,
    CubicProfile,
    EigTrajectory,
    ExpProfile,
    Grid,
    SampledProfile,
    TruncCosProfile,
    find_singular_points,
    find_zero_events,
    phase_damping,
    scan_zero_events,
    validate,
)
from tests.conftest import example4

INF = math.inf


class TestGrid:
    def test_times_and_step(self):
        g = Grid(t_max=2.0, n=5)
        assert np.allclose(g.times, [0.0, 0.5, 1.0, 1.5, 2.0])
        assert g.step == 0.5
        assert g.times[0] == 0.0 and g.times[-1] == 2.0

    def test_validation(self):
        with pytest.raises(ValueError):
            Grid(t_max=0.0, n=10)
        with pytest.raises(ValueError):
            Grid(t_max=-1.0, n=10)
        with pytest.raises(ValueError):
            Grid(t_max=1.0, n=1)


class TestEigTrajectory:
    def test_eval_and_grids(self):
        g = Grid(t_max=2.0, n=9)
        tr = phase_damping(ExpProfile(rate=1.0), 3, g)
        ch = tr.eval(1.0)
        assert ch.eigs == pytest.approx((math.exp(-1.0), math.exp(-1.0), 1.0))
        eigs = tr.eval_grid()
        assert eigs.shape == (9, 3)
        assert np.allclose(eigs[:, 2], 1.0)
        assert np.allclose(eigs[:, 0], np.exp(-g.times))
        der = tr.derivative_grid()
        assert np.allclose(der[:, 0], -np.exp(-g.times))
        assert np.allclose(der[:, 2], 0.0)

    def test_starts_at_identity(self):
        g = Grid(t_max=1.0, n=16)
        for p in (ExpProfile(1.0), CosProfile(2.0), TruncCosProfile(1.0)):
            assert phase_damping(p, 1, g).eval(0.0).eigs == (1.0, 1.0, 1.0)

    def test_phase_damping_axis_placement(self):
        g = Grid(t_max=1.0, n=16)
        for axis in (1, 2, 3):
            tr = phase_damping(ExpProfile(rate=2.0), axis, g)
            eigs = tr.eval(0.7).eigs
            assert eigs[axis - 1] == 1.0
            for a in range(3):
                if a != axis - 1:
                    assert eigs[a] == pytest.approx(math.exp(-1.4))
        with pytest.raises(ValueError, match="axis"):
            phase_damping(ExpProfile(rate=1.0), 4, g)

    def test_requires_three_profiles(self):
        with pytest.raises(ValueError):
            EigTrajectory((ExpProfile(1.0), ExpProfile(1.0)), Grid(1.0, 8))

    def test_default_zero_tol(self):
        g = Grid(t_max=1.0, n=16)
        closed = phase_damping(ExpProfile(1.0), 3, g)
        assert closed.default_zero_tol == 1e-10
        t = np.linspace(0.0, 1.0, 32)
        sampled = phase_damping(SampledProfile(tuple(t), tuple(np.exp(-t))), 3, g)
        assert sampled.default_zero_tol == 1e-6

    def test_kink_times_union(self):
        g = Grid(t_max=3.0, n=16)
        tr = EigTrajectory(
            (TruncCosProfile(omega=1.0), CubicProfile(3.0, 1.0, 1.4, 1.0),
             ConstantProfile(1.0)),
            g,
        )
        assert tr.kink_times() == (1.0, 0.5 * math.pi)


class TestScanZeroEvents:
    def test_transversal_crossing_is_refined_and_revived(self):
        times = np.linspace(0.0, 3.0, 301)
        vals = np.sin(times - 1.0)
        events = scan_zero_events(lambda s: np.sin(s - 1.0), times, vals, 1e-10)
        assert len(events) == 1
        t0, permanent, revival_idx = events[0]
        assert t0 == pytest.approx(1.0, abs=1e-9)
        assert not permanent
        assert revival_idx is not None and times[revival_idx] > 1.0

    def test_tangential_touch_is_detected(self):
        # |cos| touches zero between grid points; golden-section refinement
        # must push the located minimum inside the 1e-10 band
        times = np.linspace(0.0, 3.0, 301)
        fn = lambda s: np.abs(np.cos(s))
        events = scan_zero_events(fn, times, fn(times), 1e-10)
        assert len(events) == 1
        t0, permanent, revival_idx = events[0]
        assert t0 == pytest.approx(0.5 * math.pi, abs=1e-6)
        assert not permanent
        assert revival_idx is not None

    def test_permanent_entry(self):
        p = TruncCosProfile(omega=1.0)
        times = np.linspace(0.0, 3.0, 301)
        events = scan_zero_events(p.value, times, p.value(times), 1e-10)
        assert len(events) == 1
        t0, permanent, revival_idx = events[0]
        assert t0 == pytest.approx(0.5 * math.pi, abs=1e-8)
        assert permanent
        assert revival_idx is None

    def test_no_events_for_positive_profile(self):
        p = ExpProfile(rate=1.0)
        times = np.linspace(0.0, 3.0, 301)
        assert scan_zero_events(p.value, times, p.value(times), 1e-10) == []


class TestFindZeroEvents:
    def test_cos_phase_damping(self):
        g = Grid(t_max=4.0, n=801)
        events = find_zero_events(phase_damping(CosProfile(omega=1.0), 3, g), g)
        axes = sorted(e.axis for e in events)
        assert axes == [1, 2]
        for e in events:
            assert e.t == pytest.approx(0.5 * math.pi, abs=1e-9)
            assert not e.permanent
            assert e.revival_t > e.t
            assert abs(e.revival_value) > 1e-10

    def test_trunc_cos_phase_damping(self):
        g = Grid(t_max=4.0, n=801)
        events = find_zero_events(phase_damping(TruncCosProfile(omega=1.0), 2, g), g)
        assert sorted(e.axis for e in events) == [1, 3]
        assert all(e.permanent and e.revival_t is None for e in events)

    def test_mixture_only_flags_vanishing_axis(self):
        _, tr, g = example4()
        events = find_zero_events(tr, g)
        assert [e.axis for e in events] == [3]
        assert events[0].permanent


class TestSingularPoints:
    def test_exp_has_none(self):
        g = Grid(t_max=5.0, n=256)
        sp = find_singular_points(phase_damping(ExpProfile(1.0), 3, g), g)
        assert sp.ordered == (INF, INF, INF)
        assert sp.finite == ()

    def test_trunc_cos_phase_damping(self):
        g = Grid(t_max=4.0, n=801)
        sp = find_singular_points(phase_damping(TruncCosProfile(omega=1.0), 3, g), g)
        assert sp.by_axis[2] == INF
        assert sp.by_axis[0] == pytest.approx(0.5 * math.pi, abs=1e-8)
        assert sp.by_axis[1] == pytest.approx(0.5 * math.pi, abs=1e-8)
        assert sp.finite == pytest.approx((0.5 * math.pi, 0.5 * math.pi), abs=1e-8)

    def test_example4_mixture(self):
        _, tr, g = example4()
        sp = find_singular_points(tr, g)
        assert sp.by_axis[0] == INF and sp.by_axis[1] == INF
        assert sp.by_axis[2] == pytest.approx(0.5 * math.pi, abs=1e-8)

    def test_revived_zero_is_not_singular(self):
        g = Grid(t_max=4.0, n=801)
        sp = find_singular_points(phase_damping(CosProfile(omega=1.0), 3, g), g)
        assert sp.ordered == (INF, INF, INF)

    def test_sampled_profile_with_loose_band(self):
        base = TruncCosProfile(omega=1.0)
        nodes = np.linspace(0.0, 3.0, 201)
        sampled = SampledProfile(tuple(nodes), tuple(base.value(nodes)))
        g = Grid(t_max=3.0, n=301)
        tr = phase_damping(sampled, 3, g)
        sp = find_singular_points(tr, g)  # band defaults to 1e-6 for samples
        assert sp.by_axis[0] == pytest.approx(0.5 * math.pi, abs=0.05)
        assert sp.by_axis[2] == INF


class TestValidate:
    def test_clean_trajectories(self):
        g = Grid(t_max=4.0, n=401)
        assert validate(phase_damping(ExpProfile(1.0), 3, g), g) == []
        assert validate(phase_damping(CosProfile(1.0), 3, g), g) == []
        iso = AbsCosProfile(omega=2.0)
        assert validate(EigTrajectory((iso, iso, iso), g), g) == []

    def test_cp_violation_reported_with_time_and_eigs(self):
        # slow dephasing on two axes with a fast oscillation on the third:
        # near t = pi/3 the triple is approximately (0.95, 0.95, -0.95),
        # well outside the completely positive region
        g = Grid(t_max=2.0, n=201)
        tr = EigTrajectory(
            (ExpProfile(rate=0.05), ExpProfile(rate=0.05), CosProfile(omega=3.0)), g
        )
        bad = validate(tr, g)
        assert bad
        first = bad[0]
        assert 0.0 < first.t <= 2.0
        assert first.eigs == pytest.approx(tr.eval(first.t).eigs)
        s = sum(first.eigs)
        assert s > 1.0 + 2.0 * min(first.eigs) + 1e-9  # the violated inequality
