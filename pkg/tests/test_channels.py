"""Channel algebra: eigenvalue/probability pictures, CP tests, Bloch action.

The complete-positivity predicate is cross-checked against an independent
matrix route: the channel is applied to the elementary matrices E_ij
through its Pauli-basis action, the 4x4 Choi matrix is assembled, and its
spectrum is diagonalized numerically.
"""

import math

import numpy as np
import pytest

from paulidyn import (
    BlochState,
    PauliChannel,
    ProbVector,
    apply,
    cp_mask,
    eigs_from_probs,
    is_cp,
    is_positive,
    is_valid_state,
    positivity_mask,
    probs_from_eigs,
    trace_norm,
)

_SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def _apply_matrix(eigs, X: np.ndarray) -> np.ndarray:
    """Channel action on a 2x2 matrix via the Pauli decomposition."""
    coeffs = [0.5 * np.trace(s @ X) for s in _SIGMA]
    lam = (1.0,) + tuple(eigs)
    return sum(lam[k] * coeffs[k] * _SIGMA[k] for k in range(4))


def _choi_eigs(eigs) -> np.ndarray:
    """Spectrum of the (trace-normalized) Choi matrix, ascending."""
    C = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2), dtype=complex)
            E[i, j] = 1.0
            C += np.kron(E, _apply_matrix(eigs, E))
    return np.linalg.eigvalsh(0.5 * C)


class TestProbEigMaps:
    def test_golden_values(self):
        assert eigs_from_probs(ProbVector(1.0, 0.0, 0.0, 0.0)).eigs == (1.0, 1.0, 1.0)
        assert eigs_from_probs(ProbVector(0.25, 0.25, 0.25, 0.25)).eigs == (0.0, 0.0, 0.0)
        assert eigs_from_probs(ProbVector(0.0, 1.0, 0.0, 0.0)).eigs == (1.0, -1.0, -1.0)
        assert eigs_from_probs(ProbVector(0.0, 0.0, 0.0, 1.0)).eigs == (-1.0, -1.0, 1.0)

    def test_inverse_golden_values(self):
        assert probs_from_eigs(PauliChannel(1.0, 1.0, 1.0)).probs == (1.0, 0.0, 0.0, 0.0)
        assert probs_from_eigs(PauliChannel(0.0, 0.0, 0.0)).probs == (0.25, 0.25, 0.25, 0.25)

    def test_roundtrip_probs(self, rng):
        for _ in range(200):
            p = ProbVector(*rng.dirichlet(np.ones(4)))
            q = probs_from_eigs(eigs_from_probs(p))
            assert np.allclose(q.probs, p.probs, atol=1e-13)

    def test_roundtrip_eigs_including_noncp(self, rng):
        for _ in range(200):
            c = PauliChannel(*rng.uniform(-1.5, 1.5, size=3))
            d = eigs_from_probs(probs_from_eigs(c))
            assert np.allclose(d.eigs, c.eigs, atol=1e-13)

    def test_probs_always_sum_to_one(self, rng):
        for _ in range(100):
            p = probs_from_eigs(PauliChannel(*rng.uniform(-1.5, 1.5, size=3)))
            assert math.isclose(sum(p.probs), 1.0, abs_tol=1e-12)

    def test_unnormalized_probs_rejected(self):
        with pytest.raises(ValueError, match="sum to 1"):
            eigs_from_probs(ProbVector(0.5, 0.5, 0.5, 0.0))

    def test_probs_match_choi_spectrum(self, rng):
        for _ in range(100):
            c = PauliChannel(*rng.uniform(-1.5, 1.5, size=3))
            p = np.sort(probs_from_eigs(c).probs)
            assert np.allclose(p, _choi_eigs(c.eigs), atol=1e-12)


class TestCompletePositivity:
    def test_golden_values(self):
        assert is_cp(PauliChannel(1.0, 1.0, 1.0))
        assert is_cp(PauliChannel(1.0, -1.0, -1.0))  # unitary conjugation, boundary
        assert is_cp(PauliChannel(-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0))  # boundary
        assert is_cp(PauliChannel(0.5, 0.5, 0.5))
        assert not is_cp(PauliChannel(-0.4, -0.4, -0.4))  # sum below -1
        assert not is_cp(PauliChannel(0.9, 0.9, -0.9))  # positive but not CP
        assert is_positive(PauliChannel(0.9, 0.9, -0.9))
        assert not is_positive(PauliChannel(1.1, 0.0, 0.0))

    def test_phase_damping_channels_always_cp(self):
        for lam in np.linspace(-1.0, 1.0, 41):
            assert is_cp(PauliChannel(lam, lam, 1.0))

    def test_matches_choi_nonnegativity(self, rng):
        """The eigenvalue inequalities equal min Choi eigenvalue >= -tol/4.

        The two margins of the inequality pair are exactly 4x the two
        smallest mixing probabilities, so the thresholds map exactly.
        """
        tol = 1e-9
        for _ in range(500):
            c = PauliChannel(*rng.uniform(-1.5, 1.5, size=3))
            choi_ok = bool(_choi_eigs(c.eigs)[0] >= -tol / 4.0)
            assert is_cp(c, tol) == choi_ok

    def test_masks_match_scalar_predicates(self, rng):
        eigs = rng.uniform(-1.5, 1.5, size=(300, 3))
        cp = cp_mask(eigs)
        pos = positivity_mask(eigs)
        for k in range(eigs.shape[0]):
            c = PauliChannel(*eigs[k])
            assert bool(cp[k]) == is_cp(c)
            assert bool(pos[k]) == is_positive(c)

    def test_masks_accept_higher_rank(self, rng):
        eigs = rng.uniform(-1.5, 1.5, size=(4, 5, 3))
        assert cp_mask(eigs).shape == (4, 5)
        assert positivity_mask(eigs).shape == (4, 5)

    def test_tolerance_is_used(self):
        c = PauliChannel(-1.0 - 1e-12, 0.0, 0.0)
        assert is_cp(c, tol=1e-9)
        assert not is_cp(c, tol=1e-15)


class TestBlochOperations:
    def test_apply_scales_bloch_vector(self):
        c = PauliChannel(0.5, -0.25, 0.0)
        s = apply(c, BlochState(1.0, 0.4, 0.4, 0.4))
        assert s.x0 == 1.0
        assert np.allclose((s.x1, s.x2, s.x3), (0.2, -0.1, 0.0))

    def test_trace_norm_golden_values(self):
        assert trace_norm(BlochState(1.0, 0.0, 0.0, 0.0)) == 2.0
        assert trace_norm(BlochState(1.0, 1.0, 0.0, 0.0)) == 2.0  # pure state
        assert trace_norm(BlochState(0.0, 0.6, 0.0, 0.8)) == pytest.approx(2.0)
        assert trace_norm(BlochState(0.5, 1.0, 0.0, 0.0)) == pytest.approx(2.0)
        assert trace_norm(BlochState(0.0, 0.3, 0.0, 0.0)) == pytest.approx(0.6)

    def test_trace_norm_matches_matrix_norm(self, rng):
        for _ in range(50):
            x0, x = float(rng.uniform(-1, 1)), rng.uniform(-1, 1, size=3)
            X = x0 * _SIGMA[0] + sum(x[k] * _SIGMA[k + 1] for k in range(3))
            nuclear = float(np.abs(np.linalg.eigvalsh(X)).sum())
            s = BlochState(x0, *x)
            assert trace_norm(s) == pytest.approx(nuclear, abs=1e-12)

    def test_state_validity(self):
        assert is_valid_state(BlochState(1.0, 0.6, 0.0, 0.8))
        assert not is_valid_state(BlochState(1.0, 1.1, 0.0, 0.0))
        assert not is_valid_state(BlochState(0.0, 0.1, 0.0, 0.0))

    def test_contraction_under_cp_channel(self, rng):
        """A CP trace-preserving map never increases the trace norm."""
        for _ in range(100):
            c = PauliChannel(*rng.uniform(-1.0, 1.0, size=3))
            if not is_cp(c):
                continue
            s = BlochState(float(rng.uniform(-1, 1)), *rng.uniform(-1, 1, size=3))
            assert trace_norm(apply(c, s)) <= trace_norm(s) + 1e-12
