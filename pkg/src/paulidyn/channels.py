"""Qubit Pauli channel algebra in the eigenvalue picture.

A Pauli channel acts diagonally on the Pauli basis,

    L[sigma_alpha] = lambda_alpha sigma_alpha,    lambda_0 = 1,

and is equivalently the mixed-unitary map
rho -> sum_alpha p_alpha sigma_alpha rho sigma_alpha.  This module works
on the eigenvalue triple (lambda_1, lambda_2, lambda_3) and the mixing
vector (p_0, ..., p_3): conversion both ways, the complete-positivity
and positivity tests, and the action on Bloch-parametrized operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "PauliChannel",
    "ProbVector",
    "BlochState",
    "eigs_from_probs",
    "probs_from_eigs",
    "is_cp",
    "is_positive",
    "cp_mask",
    "positivity_mask",
    "apply",
    "trace_norm",
    "is_valid_state",
]


@dataclass(frozen=True)
class PauliChannel:
    """Pauli map with eigenvalues (lambda_1, lambda_2, lambda_3); lambda_0 = 1 implied."""

    l1: float
    l2: float
    l3: float

    @property
    def eigs(self) -> tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class ProbVector:
    """Mixing vector (p_0, p_1, p_2, p_3) of the mixed-unitary form.

    Entries sum to 1.  Negative entries are allowed as a quasi-probability
    representation of a non-CP map; ``is_cp`` on the matching channel is
    equivalent to all entries being nonnegative.
    """

    p0: float
    p1: float
    p2: float
    p3: float

    @property
    def probs(self) -> tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)


@dataclass(frozen=True)
class BlochState:
    """Coefficients of the Hermitian operator X = x0*I + x1*s1 + x2*s2 + x3*s3.

    x0 is the trace/2 component.  States are carried with the convention
    x0 = 1 and |x| <= 1 (the operator is then twice a density matrix, which
    leaves every norm comparison unchanged).
    """

    x0: float
    x1: float
    x2: float
    x3: float


def eigs_from_probs(p: ProbVector) -> PauliChannel:
    """Channel eigenvalues of the mixed-unitary map with mixing vector p.

    lambda_alpha = p0 + 2 p_alpha - (p1 + p2 + p3) for alpha = 1, 2, 3.

    Raises
    ------
    ValueError
        If the entries do not sum to 1 within 1e-9.
    """
    total = p.p0 + p.p1 + p.p2 + p.p3
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"mixing vector must sum to 1, got {total!r}")
    rest = p.p1 + p.p2 + p.p3
    return PauliChannel(
        p.p0 + 2.0 * p.p1 - rest,
        p.p0 + 2.0 * p.p2 - rest,
        p.p0 + 2.0 * p.p3 - rest,
    )


def probs_from_eigs(c: PauliChannel) -> ProbVector:
    """Invert eigs_from_probs.

    p0 = (1 + l1 + l2 + l3)/4 and p_alpha = (1 + 2 l_alpha - sum_beta l_beta)/4.
    The result always sums to 1; entries are negative exactly when the
    channel fails complete positivity.
    """
    s = c.l1 + c.l2 + c.l3
    return ProbVector(
        0.25 * (1.0 + s),
        0.25 * (1.0 + 2.0 * c.l1 - s),
        0.25 * (1.0 + 2.0 * c.l2 - s),
        0.25 * (1.0 + 2.0 * c.l3 - s),
    )


def is_cp(c: PauliChannel, tol: float = DEFAULT_TOL) -> bool:
    """Complete positivity of a Pauli map.

    Tests the eigenvalue inequalities

        -1 <= l1 + l2 + l3 <= 1 + 2 min_alpha l_alpha

    within tol.  Equivalent to all four mixing probabilities being >= -tol
    (up to a factor <= 4 in how tol enters each side).
    """
    s = c.l1 + c.l2 + c.l3
    return (s >= -1.0 - tol) and (s <= 1.0 + 2.0 * min(c.eigs) + tol)


def is_positive(c: PauliChannel, tol: float = DEFAULT_TOL) -> bool:
    """Positivity (not necessarily complete) of a Pauli map: max |l_alpha| <= 1."""
    return max(abs(c.l1), abs(c.l2), abs(c.l3)) <= 1.0 + tol


def cp_mask(eigs: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized is_cp over an (..., 3) eigenvalue array."""
    eigs = np.asarray(eigs, dtype=float)
    s = eigs.sum(axis=-1)
    return (s >= -1.0 - tol) & (s <= 1.0 + 2.0 * eigs.min(axis=-1) + tol)


def positivity_mask(eigs: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized is_positive over an (..., 3) eigenvalue array."""
    eigs = np.asarray(eigs, dtype=float)
    return np.abs(eigs).max(axis=-1) <= 1.0 + tol


def apply(c: PauliChannel, s: BlochState) -> BlochState:
    """Action of the channel in Bloch coordinates: x0 fixed, x_alpha -> l_alpha x_alpha."""
    return BlochState(s.x0, c.l1 * s.x1, c.l2 * s.x2, c.l3 * s.x3)


def trace_norm(s: BlochState) -> float:
    """Trace norm of X = x0*I + x.sigma.

    X has eigenvalues x0 +- r with r = |x|, so ||X||_1 = |x0 + r| + |x0 - r|.
    """
    r = math.sqrt(s.x1 * s.x1 + s.x2 * s.x2 + s.x3 * s.x3)
    return abs(s.x0 + r) + abs(s.x0 - r)


def is_valid_state(s: BlochState, tol: float = DEFAULT_TOL) -> bool:
    """State convention check: x0 = 1 and the Bloch vector inside the unit ball."""
    r2 = s.x1 * s.x1 + s.x2 * s.x2 + s.x3 * s.x3
    return abs(s.x0 - 1.0) <= tol and r2 <= 1.0 + tol
