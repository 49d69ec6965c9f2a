"""Dense symmetric linear algebra: SPD solves, spectra, definiteness tests.

Thin, contract-checked wrappers around LAPACK (via numpy/scipy). All
matrices in this package are real symmetric, so every spectrum is real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

__all__ = [
    "NotPositiveDefiniteError",
    "Spectrum",
    "solve_spd",
    "eig_symmetric",
    "gershgorin_all_negative",
    "is_negative_definite",
]


class NotPositiveDefiniteError(ValueError):
    """Cholesky factorisation hit a non-positive pivot."""


def _as_symmetric(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix must be exactly symmetric")
    return M


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues in ascending order."""

    eigenvalues: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


def solve_spd(M, b) -> np.ndarray:
    """Solve M x = b for symmetric positive definite M (Cholesky).

    Raises NotPositiveDefiniteError when factorisation fails, which for
    interaction matrices signals that the system sits past its pitchfork
    threshold.
    """
    M = _as_symmetric(M)
    b = np.asarray(b, dtype=float)
    if b.shape != (M.shape[0],):
        raise ValueError("right-hand side has the wrong length")
    try:
        factor = cho_factor(M, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(str(e)) from None
    return cho_solve(factor, b, check_finite=False)


def eig_symmetric(M) -> Spectrum:
    """Full spectrum of a symmetric matrix, ascending."""
    M = _as_symmetric(M)
    if not np.isfinite(M).all():
        raise ValueError("matrix entries must be finite")
    vals = np.linalg.eigvalsh(M)
    vals.setflags(write=False)
    return Spectrum(vals)


def gershgorin_all_negative(centers, radii) -> bool:
    """True iff every Gershgorin disk lies strictly in the left half-plane.

    For a symmetric matrix with diagonal ``centers`` and absolute
    off-diagonal row sums ``radii``, this certifies negative definiteness
    (one-directional: a False result proves nothing).
    """
    centers = np.asarray(centers, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if centers.shape != radii.shape:
        raise ValueError("centers and radii must have matching shapes")
    if (radii < 0).any():
        raise ValueError("radii must be non-negative")
    return bool(np.all(centers + radii < 0))


def is_negative_definite(M) -> bool:
    """True iff all eigenvalues of symmetric M are strictly negative.

    Tested by attempting a Cholesky factorisation of -M, which is cheaper
    than a full eigendecomposition.
    """
    M = _as_symmetric(M)
    try:
        cho_factor(-M, lower=True, check_finite=False)
    except np.linalg.LinAlgError:
        return False
    return True
