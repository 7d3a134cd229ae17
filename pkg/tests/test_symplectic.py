"""Tests for the symplectic core: forms, certificates, normal forms."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_covariance
from egain.errors import InadmissibleInputError
from egain.symplectic import (
    canonical_form,
    check_hermitian_psd,
    random_symplectic,
    symplectic_eigenvalues,
    williamson,
)


class TestCanonicalForm:
    def test_block_structure(self):
        space = canonical_form(2)
        block = np.array([[0.0, -1.0], [1.0, 0.0]])
        expected = np.zeros((4, 4))
        expected[:2, :2] = block
        expected[2:, 2:] = block
        assert np.array_equal(space.delta, expected)

    def test_algebraic_identities(self):
        for s in (1, 2, 3):
            delta = canonical_form(s).delta
            assert np.array_equal(delta.T, -delta)
            assert np.array_equal(delta @ delta, -np.eye(2 * s))
            assert np.linalg.det(delta) == pytest.approx(1.0)

    def test_immutable(self):
        space = canonical_form(1)
        with pytest.raises(ValueError):
            space.delta[0, 0] = 5.0

    def test_rejects_bad_mode_count(self):
        with pytest.raises(InadmissibleInputError):
            canonical_form(0)


class TestHermitianCert:
    def test_positive_definite(self):
        cert = check_hermitian_psd(np.diag([2.0, 1.0]))
        assert cert.verdict == "positive_definite"
        assert cert.is_positive_definite and cert.is_positive_semidefinite
        assert cert.min_eigenvalue == pytest.approx(1.0)

    def test_saturating_is_semidefinite_only(self):
        cert = check_hermitian_psd(np.diag([1.0, 0.0]))
        assert cert.verdict == "positive_semidefinite"
        assert not cert.is_positive_definite
        assert cert.is_positive_semidefinite

    def test_indefinite_quarter_identity(self):
        # (1/4)I + (i/2)Delta has eigenvalues 1/4 +- 1/2, so min is exactly -1/4:
        # a covariance scaled below the vacuum fails the admissibility test.
        space = canonical_form(1)
        cert = check_hermitian_psd(0.25 * np.eye(2) + 0.5j * space.delta)
        assert cert.verdict == "indefinite"
        assert cert.min_eigenvalue == pytest.approx(-0.25, abs=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InadmissibleInputError):
            check_hermitian_psd(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestSymplecticEigenvalues:
    def test_thermal_blocks(self):
        space = canonical_form(2)
        alpha = np.diag([2.0, 2.0, 0.7, 0.7])
        nu = symplectic_eigenvalues(alpha, space)
        assert nu == pytest.approx([2.0, 0.7])

    def test_descending_order(self, rng):
        alpha, nus = random_covariance(rng, 3)
        computed = symplectic_eigenvalues(alpha, canonical_form(3))
        assert np.all(np.diff(computed) <= 1e-12)
        assert computed == pytest.approx(nus, rel=1e-10)

    def test_rejects_non_positive(self):
        space = canonical_form(1)
        with pytest.raises(InadmissibleInputError):
            symplectic_eigenvalues(np.diag([1.0, -1.0]), space)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), modes=st.integers(1, 3))
    def test_invariant_under_symplectic_congruence(self, seed, modes):
        gen = np.random.default_rng(seed)
        space = canonical_form(modes)
        alpha, _ = random_covariance(gen, modes)
        S = random_symplectic(space, gen, scale=0.3)
        before = symplectic_eigenvalues(alpha, space)
        after = symplectic_eigenvalues(S @ alpha @ S.T, space)
        assert after == pytest.approx(before, rel=1e-8)


class TestWilliamson:
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), modes=st.integers(1, 3))
    def test_roundtrip(self, seed, modes):
        gen = np.random.default_rng(seed)
        space = canonical_form(modes)
        alpha, nus = random_covariance(gen, modes)
        result = williamson(alpha, space)
        D = result.T.T @ alpha @ result.T
        assert D == pytest.approx(np.diag(np.repeat(result.nu, 2)), abs=1e-9)
        assert result.T.T @ space.delta @ result.T == pytest.approx(space.delta, abs=1e-9)
        assert result.nu == pytest.approx(nus, rel=1e-9)

    def test_identity_input(self):
        space = canonical_form(1)
        result = williamson(np.eye(2), space)
        assert result.nu == pytest.approx([1.0])

    def test_rejects_indefinite(self):
        space = canonical_form(1)
        with pytest.raises(InadmissibleInputError):
            williamson(np.diag([1.0, -0.5]), space)

    def test_rejects_asymmetric(self):
        space = canonical_form(1)
        with pytest.raises(InadmissibleInputError):
            williamson(np.array([[1.0, 0.3], [0.0, 1.0]]), space)


class TestRandomSymplectic:
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), modes=st.integers(1, 3))
    def test_preserves_form(self, seed, modes):
        gen = np.random.default_rng(seed)
        space = canonical_form(modes)
        S = random_symplectic(space, gen)
        assert S.T @ space.delta @ S == pytest.approx(space.delta, abs=1e-10)
