"""Shared helpers for the test suite."""

import numpy as np
import pytest

from egain.symplectic import canonical_form, random_symplectic


def random_covariance(rng, modes, nu_min=0.6, nu_max=3.0, scale=0.4):
    """Random nondegenerate admissible covariance with a known normal form.

    Symplectic congruence preserves the symplectic spectrum, so conjugating
    a direct sum of thermal blocks by a random symplectic yields a
    covariance whose exact symplectic eigenvalues are the drawn nu values.
    Returns (alpha, nu_descending).
    """
    space = canonical_form(modes)
    nus = np.sort(rng.uniform(nu_min, nu_max, size=modes))[::-1]
    T = random_symplectic(space, rng, scale=scale)
    alpha = T @ np.diag(np.repeat(nus, 2)) @ T.T
    return 0.5 * (alpha + alpha.T), nus


def random_spd(rng, dim, scale=0.5):
    """Random symmetric positive definite matrix with eigenvalues >= 0.1."""
    A = rng.normal(size=(dim, dim)) * scale
    return A @ A.T + 0.1 * np.eye(dim)


def random_regular_channel(rng, modes, tol=1e-9):
    """Random admissible regular channel (K, mu) with generous noise."""
    from egain.channels import make_channel

    space = canonical_form(modes)
    K = rng.normal(size=(2 * modes, 2 * modes))
    # K from a continuous distribution is invertible almost surely; the
    # noise is sized well above the positivity bound so the cert is strict.
    gap = space.delta - K.T @ space.delta @ K
    mu = (0.6 * np.linalg.norm(gap, 2) + 0.5) * np.eye(2 * modes)
    return make_channel(K, mu, space, tol=tol)


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
