"""Time-local generator rates: extraction, reconstruction, divergences."""

import math

import numpy as np
import pytest

from paulidyn import (
    CosProfile,
    DampedCosProfile,
    ExpProfile,
    Grid,
    RateTriple,
    SingularGenerator,
    TruncCosProfile,
    eigs_from_rates,
    ode_roundtrip,
    phase_damping,
    rate_sum_limit,
    rates_from_eigs,
    random_rate_triple,
)
from tests.conftest import enm, example4


def example4_rate_forms(omega: float):
    """Closed-form rates of the two-axis truncated-cosine mixture.

    Valid for t < pi/2w; the map is constant afterwards, so the rates of
    the surviving block vanish there.
    """
    cut = 0.5 * math.pi / omega

    def g1(t):
        return 0.5 * omega * math.tan(omega * t) if t < cut else 0.0

    def g3(t):
        if t >= cut:
            return 0.0
        c = math.cos(omega * t)
        return -0.5 * omega * math.tan(omega * t) * (1.0 - c) / (1.0 + c)

    return g1, g1, g3


class TestRatesFromEigs:
    def test_exp_phase_damping_is_semigroup(self):
        g = Grid(t_max=3.0, n=64)
        tr = phase_damping(ExpProfile(rate=1.7), 3, g)
        for t in (0.0, 0.5, 2.9):
            gam = rates_from_eigs(tr, t)
            assert gam.shape == (3,)
            assert gam == pytest.approx((0.0, 0.0, 1.7), abs=1e-12)

    def test_vectorized_shape(self):
        g = Grid(t_max=3.0, n=64)
        tr = phase_damping(ExpProfile(rate=1.0), 2, g)
        gam = rates_from_eigs(tr, g.times)
        assert gam.shape == (64, 3)
        assert np.allclose(gam[:, 1], 1.0, atol=1e-12)
        assert np.allclose(gam[:, [0, 2]], 0.0, atol=1e-12)

    def test_example4_closed_forms(self):
        omega = 1.0
        _, tr, _ = example4(omega)
        g1, g2, g3 = example4_rate_forms(omega)
        for t in np.linspace(0.0, 0.49 * math.pi / omega, 200):
            gam = rates_from_eigs(tr, float(t))
            assert gam[0] == pytest.approx(g1(t), abs=1e-8)
            assert gam[1] == pytest.approx(g2(t), abs=1e-8)
            assert gam[2] == pytest.approx(g3(t), abs=1e-8)

    def test_enm_closed_form(self):
        rate = 1.0
        _, tr, g = enm(rate)
        tt = g.times[1:]
        gam = rates_from_eigs(tr, tt)
        assert np.allclose(gam[:, 0], 0.5 * rate, atol=1e-10)
        assert np.allclose(gam[:, 1], 0.5 * rate, atol=1e-10)
        assert np.allclose(gam[:, 2], -0.5 * rate * np.tanh(0.5 * rate * tt), atol=1e-10)

    def test_singular_time_raises(self):
        g = Grid(t_max=3.0, n=64)
        tr = phase_damping(TruncCosProfile(omega=1.0), 3, g)
        with pytest.raises(SingularGenerator) as exc:
            rates_from_eigs(tr, 2.0)  # profile is identically 0 there
        assert exc.value.t == 2.0
        assert exc.value.axis in (1, 2)
        assert abs(exc.value.value) <= 1e-10
        with pytest.raises(SingularGenerator):
            rates_from_eigs(tr, np.array([0.5, 1.0, 2.5]))

    def test_nonpositive_eigenvalue_raises(self):
        # a negative eigenvalue also falls below the zero band: the map has
        # crossed a zero, so no generator exists on this side of it
        g = Grid(t_max=3.0, n=64)
        tr = phase_damping(CosProfile(omega=1.0), 3, g)
        with pytest.raises(SingularGenerator):
            rates_from_eigs(tr, 2.0)

    def test_rate_signs_match_cleared_inequality(self, rng):
        """gamma_a >= 0 iff d/dt[l_a] l_b l_c - l_a d/dt[l_b] l_c - l_a l_b d/dt[l_c] >= 0.

        The cleared form equals 2 gamma_a l1 l2 l3 wherever all eigenvalues
        are positive -- same algebra, so signs must agree exactly.
        """
        g = Grid(t_max=2.0, n=128)
        for _ in range(20):
            tr = phase_damping(
                DampedCosProfile(decay=float(rng.uniform(0.2, 1.0)),
                                 omega=float(rng.uniform(0.3, 0.7))),
                int(rng.integers(1, 4)), g)
            tt = g.times
            lam = tr.eval_grid(tt)
            der = tr.derivative_grid(tt)
            gam = rates_from_eigs(tr, tt)
            prod = lam.prod(axis=1)
            for a in range(3):
                b, c = (a + 1) % 3, (a + 2) % 3
                cleared = (der[:, a] * lam[:, b] * lam[:, c]
                           - lam[:, a] * der[:, b] * lam[:, c]
                           - lam[:, a] * lam[:, b] * der[:, c])
                assert np.allclose(cleared, 2.0 * gam[:, a] * prod, atol=1e-12)


class TestEigsFromRates:
    def test_constant_rates_give_exponentials(self):
        r = 1.3
        rates = RateTriple(lambda t: 0.0, lambda t: 0.0, lambda t: r)
        tr = eigs_from_rates(rates, Grid(t_max=2.0, n=64))
        tt = tr.grid.times
        eigs = tr.eval_grid(tt)
        assert np.allclose(eigs[:, 0], np.exp(-r * tt), atol=1e-9)
        assert np.allclose(eigs[:, 1], np.exp(-r * tt), atol=1e-9)
        assert np.allclose(eigs[:, 2], 1.0, atol=1e-12)

    def test_isotropic_rates(self):
        rates = RateTriple(*(lambda t: 0.5,) * 3)
        tr = eigs_from_rates(rates, Grid(t_max=2.0, n=64))
        tt = tr.grid.times
        assert np.allclose(tr.eval_grid(tt), np.exp(-tt)[:, None], atol=1e-9)

    def test_normalized_at_origin(self):
        rates = RateTriple(lambda t: 0.2, lambda t: 0.4, lambda t: 0.1)
        tr = eigs_from_rates(rates, Grid(t_max=1.0, n=16))
        assert tr.eval(0.0).eigs == (1.0, 1.0, 1.0)

    # quad warns while integrating the diverging pair sum up to the flagged
    # cutoff; the reconstruction handles that divergence by freezing at zero.
    @pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
    def test_example4_rates_reproduce_eigenvalue_block(self):
        omega = 1.0
        cut = 0.5 * math.pi / omega
        g1, g2, g3 = example4_rate_forms(omega)
        rates = RateTriple(g1, g2, g3, divergence_times=(cut,))
        grid = Grid(t_max=1.5 * math.pi / omega, n=97)
        tr = eigs_from_rates(rates, grid)
        tt = grid.times
        eigs = tr.eval_grid(tt)
        want_12 = np.where(tt < cut, (1.0 + np.cos(omega * tt)) / 2.0, 0.5)
        want_3 = np.where(tt < cut, np.cos(omega * tt), 0.0)
        assert np.abs(eigs[:, 0] - want_12).max() < 1e-8
        assert np.abs(eigs[:, 1] - want_12).max() < 1e-8
        assert np.abs(eigs[:, 2] - want_3).max() < 1e-8

    def test_negative_rate_pushing_eigenvalue_above_one_rejected(self):
        rates = RateTriple(lambda t: -0.5, lambda t: 0.0, lambda t: 0.0)
        with pytest.raises(ValueError, match="exceeds 1"):
            eigs_from_rates(rates, Grid(t_max=2.0, n=64))

    def test_grid_too_small_rejected(self):
        rates = RateTriple(lambda t: 0.1, lambda t: 0.1, lambda t: 0.1)
        with pytest.raises(ValueError, match="at least 4"):
            eigs_from_rates(rates, Grid(t_max=1.0, n=3))

    def test_roundtrip_random_smooth_rates(self):
        rng = np.random.default_rng(7)
        grid = Grid(t_max=1.0, n=800)
        for _ in range(3):
            rates = random_rate_triple(rng)
            tr = eigs_from_rates(rates, grid)
            tt = grid.times[5:-5]
            back = rates_from_eigs(tr, tt)
            want = np.array([rates.values(float(t)) for t in tt])
            assert np.abs(back - want).max() < 1e-6


class TestOdeRoundtrip:
    def test_semigroup(self):
        g = Grid(t_max=5.0, n=128)
        assert ode_roundtrip(phase_damping(ExpProfile(1.0), 3, g), g) < 1e-8

    def test_damped_cos_inside_invertible_window(self):
        omega = 1.0
        g = Grid(t_max=0.9 * 0.5 * math.pi / omega, n=128)
        tr = phase_damping(DampedCosProfile(0.5, omega), 3, g)
        assert ode_roundtrip(tr, g) < 1e-6

    def test_example4_inside_invertible_window(self):
        omega = 1.0
        _, tr, _ = example4(omega)
        g = Grid(t_max=0.45 * math.pi / omega, n=128)
        assert ode_roundtrip(tr, g) < 1e-6

    def test_singular_grid_rejected(self):
        g = Grid(t_max=2.0, n=64)
        tr = phase_damping(TruncCosProfile(omega=1.0), 3, g)
        with pytest.raises(SingularGenerator):
            ode_roundtrip(tr, g)


class TestRateSumLimit:
    def test_finite_pair_limits_at_example4_singular_time(self):
        omega = 1.0
        _, tr, _ = example4(omega)
        t_star = 0.5 * math.pi / omega
        for axes in ((1, 3), (2, 3)):
            lim = rate_sum_limit(tr, axes, t_star)
            assert not lim.diverged
            assert lim.value == pytest.approx(omega, abs=1e-6)
            assert lim.error < 1e-6

    def test_divergent_pair_reports_signed_infinity(self):
        _, tr, _ = example4(1.0)
        lim = rate_sum_limit(tr, (1, 2), 0.5 * math.pi)
        assert lim.diverged
        assert lim.value == math.inf

    def test_scales_with_frequency(self):
        omega = 2.0
        _, tr, _ = example4(omega)
        lim = rate_sum_limit(tr, (1, 3), 0.5 * math.pi / omega)
        assert lim.value == pytest.approx(omega, abs=1e-6)

    def test_requires_flagged_divergence_time(self):
        g = Grid(t_max=3.0, n=64)
        tr = phase_damping(ExpProfile(1.0), 3, g)
        with pytest.raises(ValueError, match="not a flagged divergence"):
            rate_sum_limit(tr, (1, 2), 1.5)
        _, tr4, _ = example4(1.0)
        with pytest.raises(ValueError, match="not a flagged divergence"):
            rate_sum_limit(tr4, (1, 3), 0.3)

    def test_axes_validated(self):
        _, tr, _ = example4(1.0)
        with pytest.raises(ValueError, match="distinct"):
            rate_sum_limit(tr, (1, 1), 0.5 * math.pi)
        with pytest.raises(ValueError, match="distinct"):
            rate_sum_limit(tr, (0, 2), 0.5 * math.pi)
