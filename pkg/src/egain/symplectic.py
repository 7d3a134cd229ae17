"""Symplectic linear algebra on canonical phase space.

All matrices use the interleaved variable ordering (q1, p1, ..., qs, ps).
The commutation matrix ``delta`` is the s-fold block diagonal of
[[0, -1], [1, 0]]; it is skew-symmetric, squares to minus the identity and
has unit determinant, so ``delta**-1 == -delta``.

A real symmetric ``alpha`` is an admissible covariance matrix iff the
Hermitian matrix ``alpha + (i/2) delta`` is positive semidefinite,
equivalently iff every symplectic eigenvalue of ``alpha`` is >= 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InadmissibleInputError

DEFAULT_TOL = 1e-9

VERDICT_PD = "positive_definite"
VERDICT_PSD = "positive_semidefinite"
VERDICT_INDEFINITE = "indefinite"

_BLOCK = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    """Mode count together with the canonical commutation matrix."""

    s: int
    delta: np.ndarray


def canonical_form(s: int) -> PhaseSpace:
    """Return the s-mode phase space with the canonical commutation matrix."""
    if int(s) != s or s < 1:
        raise InadmissibleInputError("mode count s must be a positive integer")
    delta = np.kron(np.eye(int(s)), _BLOCK)
    delta.flags.writeable = False
    return PhaseSpace(s=int(s), delta=delta)


@dataclass(frozen=True)
class HermitianCert:
    """Outcome of a positivity check on a Hermitian matrix.

    ``tolerance`` is the absolute eigenvalue threshold actually applied:
    the verdict is ``positive_definite`` iff min_eigenvalue > tolerance and
    ``positive_semidefinite`` iff min_eigenvalue >= -tolerance.
    """

    min_eigenvalue: float
    tolerance: float
    verdict: str

    @property
    def is_positive_definite(self) -> bool:
        return self.verdict == VERDICT_PD

    @property
    def is_positive_semidefinite(self) -> bool:
        return self.verdict in (VERDICT_PD, VERDICT_PSD)


def check_hermitian_psd(M: np.ndarray, tol: float = DEFAULT_TOL) -> HermitianCert:
    """Certify positive (semi)definiteness of a Hermitian matrix.

    ``tol`` is relative; it is scaled by the spectral radius (floored at 1)
    to obtain the absolute threshold reported in the certificate.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InadmissibleInputError("expected a square matrix")
    defect = np.linalg.norm(M - M.conj().T)
    if defect > tol * max(np.linalg.norm(M), 1.0):
        raise InadmissibleInputError(
            f"matrix is not Hermitian within tolerance (defect {defect:.3e})"
        )
    eigs = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    min_eig = float(eigs[0])
    abs_tol = tol * max(1.0, float(np.abs(eigs).max()))
    if min_eig > abs_tol:
        verdict = VERDICT_PD
    elif min_eig >= -abs_tol:
        verdict = VERDICT_PSD
    else:
        verdict = VERDICT_INDEFINITE
    return HermitianCert(min_eigenvalue=min_eig, tolerance=abs_tol, verdict=verdict)


def _require_symmetric(alpha: np.ndarray, space: PhaseSpace, tol: float) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    n = 2 * space.s
    if alpha.shape != (n, n):
        raise InadmissibleInputError(f"expected a {n}x{n} matrix, got {alpha.shape}")
    if np.linalg.norm(alpha - alpha.T) > tol * max(np.linalg.norm(alpha), 1.0):
        raise InadmissibleInputError("covariance matrix must be symmetric")
    return 0.5 * (alpha + alpha.T)


def _sym_sqrt(alpha: np.ndarray, tol: float):
    """Square root and inverse square root of a symmetric positive definite matrix."""
    w, Q = np.linalg.eigh(alpha)
    if w[0] <= tol * max(1.0, w[-1]):
        raise InadmissibleInputError(
            f"matrix is not positive definite (min eigenvalue {w[0]:.3e})"
        )
    root = (Q * np.sqrt(w)) @ Q.T
    inv_root = (Q / np.sqrt(w)) @ Q.T
    return root, inv_root


def symplectic_eigenvalues(
    alpha: np.ndarray, space: PhaseSpace, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Symplectic eigenvalues of a symmetric positive definite matrix, descending.

    Computed as the positive spectrum of the Hermitian matrix
    ``alpha^(1/2) (i delta^-1) alpha^(1/2)``, which is similar to
    ``i delta^-1 alpha`` and therefore carries the pairs (+nu_j, -nu_j).
    """
    alpha = _require_symmetric(alpha, space, tol)
    root, _ = _sym_sqrt(alpha, tol)
    herm = -1j * (root @ space.delta @ root)  # i * delta^-1 conjugated by alpha^(1/2)
    ev = np.linalg.eigvalsh(herm)
    if not np.allclose(ev, -ev[::-1], atol=tol * max(1.0, abs(ev[-1]))):
        raise RuntimeError("symplectic spectrum did not split into +/- pairs")
    return ev[::-1][: space.s].copy()


@dataclass(frozen=True, eq=False)
class WilliamsonDecomposition:
    """Symplectic congruence T and symplectic eigenvalues nu (descending).

    ``T.T @ alpha @ T`` equals ``diag(nu_1, nu_1, ..., nu_s, nu_s)`` and
    ``T.T @ delta @ T`` equals ``delta``.
    """

    T: np.ndarray
    nu: np.ndarray


def williamson(
    alpha: np.ndarray, space: PhaseSpace, tol: float = DEFAULT_TOL
) -> WilliamsonDecomposition:
    """Williamson normal form of a symmetric positive definite matrix.

    Eigenvectors w_j of the Hermitian matrix alpha^(1/2) (i delta^-1) alpha^(1/2)
    at eigenvalue +nu_j are pulled back to u_j = alpha^(-1/2) w_j; writing
    u_j = x_j + i y_j, the columns (sqrt(2 nu_j) x_j, -sqrt(2 nu_j) y_j) are
    symplectic and diagonalize alpha by congruence.
    """
    alpha = _require_symmetric(alpha, space, tol)
    root, inv_root = _sym_sqrt(alpha, tol)
    herm = -1j * (root @ space.delta @ root)
    w, W = np.linalg.eigh(herm)
    order = np.argsort(w)[::-1][: space.s]
    nu = w[order]
    U = inv_root @ W[:, order]
    n = 2 * space.s
    T = np.empty((n, n))
    scale = np.sqrt(2.0 * nu)
    T[:, 0::2] = scale * U.real
    T[:, 1::2] = -scale * U.imag
    defect = np.linalg.norm(T.T @ space.delta @ T - space.delta)
    if defect > max(tol, 1e-12 * n) * 100:
        raise RuntimeError(f"symplectic defect {defect:.3e} exceeds tolerance")
    return WilliamsonDecomposition(T=T, nu=nu)


def random_symplectic(
    space: PhaseSpace, rng: np.random.Generator, scale: float = 0.5
) -> np.ndarray:
    """Random symplectic matrix exp(delta @ A) for symmetric Gaussian A.

    ``scale`` sets the entry scale of A and thereby the squeezing strength.
    """
    n = 2 * space.s
    A = rng.normal(scale=scale, size=(n, n))
    A = 0.5 * (A + A.T)
    return scipy.linalg.expm(space.delta @ A)
