"""Dense complex matrix kernel: Takagi, psd square root, pseudoinverse.

SVD and Hermitian eigendecompositions are delegated to LAPACK through
numpy/scipy.  The routines here add the policy layers on top of them:
symmetry and positivity guards, degenerate-cluster handling in the Takagi
factorization, and deterministic rank/singularity cutoffs.

Default cutoffs (all overridable per call):

* ``RANK_RTOL``:  singular values below ``RANK_RTOL * max(rows, cols) *
  sigma_max`` are treated as zero.
* ``SING_TOL``:   a square real matrix counts as singular when its smallest
  singular value is at most ``SING_TOL * (1 + ||m||)``.
* ``GROUP_RTOL``: singular values closer than ``GROUP_RTOL * max(1, sigma_max)``
  are treated as one degenerate cluster inside :func:`takagi`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NotHermitian, NotPsd, NotSymmetric

RANK_RTOL = 1e-12
SING_TOL = 1e-8
GROUP_RTOL = 1e-7


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value of ``a`` (0.0 for an empty matrix)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def _require_square(a: np.ndarray, what: str = "matrix") -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {a.shape}")


def _as_complex(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix has non-finite entries")
    return m


@dataclass(frozen=True)
class TakagiFactorization:
    """Factorization B = u @ diag(sigma) @ u.T with u unitary, sigma >= 0."""

    u: np.ndarray
    sigma: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.u @ np.diag(self.sigma) @ self.u.T


def takagi(b, sym_rtol: float = 1e-10, group_rtol: float = GROUP_RTOL) -> TakagiFactorization:
    """Takagi factorization of a complex symmetric matrix.

    Computes unitary ``u`` and nonnegative descending ``sigma`` with
    ``b = u @ diag(sigma) @ u.T``.  ``sigma`` equals the singular values
    of ``b``.  Built from the SVD ``b = W S V*``: the unitary
    ``M = W* conj(V)`` is block diagonal over clusters of equal singular
    values, and ``u = W sqrtm(M)`` computed clusterwise.  Clusters closer
    than ``group_rtol * max(1, sigma_max)`` are rotated together, which is
    what makes repeated singular values safe.

    Raises:
        NotSymmetric: if ``||b - b.T|| > sym_rtol * (1 + ||b||)``.
    """
    b = _as_complex(b)
    _require_square(b, "takagi input")
    scale = spectral_norm(b)
    if spectral_norm(b - b.T) > sym_rtol * (1.0 + scale):
        raise NotSymmetric("input is not complex symmetric within tolerance")
    bs = 0.5 * (b + b.T)

    w, s, vh = np.linalg.svd(bs)
    v = vh.conj().T
    n = bs.shape[0]
    u = np.zeros((n, n), dtype=complex)

    tau = group_rtol * max(1.0, float(s[0]) if n else 0.0)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and s[stop - 1] - s[stop] <= tau:
            stop += 1
        idx = slice(start, stop)
        if s[start] <= tau:
            # zero cluster contributes nothing to the reconstruction
            u[:, idx] = w[:, idx]
        else:
            m = w[:, idx].conj().T @ v[:, idx].conj()
            u[:, idx] = w[:, idx] @ scipy.linalg.sqrtm(m)
        start = stop

    return TakagiFactorization(u=u, sigma=s.copy())


def psd_sqrt(h, rtol: float = 1e-10) -> np.ndarray:
    """Positive semidefinite square root of a Hermitian psd matrix.

    Eigenvalues with ``|lam| <= rtol * (1 + ||h||)`` are flushed to zero
    (this keeps ``||R^2 - h|| <= rtol * (1 + ||h||)`` while preventing
    floating-point noise at zero from turning into spurious ``sqrt(eps)``
    eigenvalues of the root, which matters to anything that later inverts
    the result).

    Raises:
        NotHermitian: if ``h`` is not Hermitian within ``rtol``.
        NotPsd: if an eigenvalue falls below ``-rtol * (1 + ||h||)``.
    """
    h = _as_complex(h)
    _require_square(h, "psd_sqrt input")
    scale = spectral_norm(h)
    if spectral_norm(h - h.conj().T) > rtol * (1.0 + scale):
        raise NotHermitian("input is not Hermitian within tolerance")
    hs = 0.5 * (h + h.conj().T)
    vals, vecs = np.linalg.eigh(hs)
    if vals.size and vals[0] < -rtol * (1.0 + scale):
        raise NotPsd(f"minimum eigenvalue {vals[0]:.3e} below tolerance")
    vals[np.abs(vals) <= rtol * (1.0 + scale)] = 0.0
    vals = np.clip(vals, 0.0, None)
    r = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return 0.5 * (r + r.conj().T)


def pinv(a, rank_rtol: float = RANK_RTOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with the package rank cutoff.

    Singular values at or below ``rank_rtol * max(rows, cols) * sigma_max``
    are treated as zero.
    """
    a = _as_complex(a)
    return np.linalg.pinv(a, rcond=rank_rtol * max(a.shape))


def min_singular_real(m) -> float:
    """Smallest singular value of a square real matrix."""
    m = np.asarray(m, dtype=float)
    _require_square(m, "min_singular_real input")
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[-1])


def singularity_threshold(m, tol: float = SING_TOL) -> float:
    """Cutoff below which ``min_singular_real(m)`` counts as singular."""
    return tol * (1.0 + spectral_norm(m))


def numerical_rank(a, rank_rtol: float = RANK_RTOL, floor: float = 0.0) -> int:
    """Rank of ``a`` counting singular values above the package cutoff.

    ``floor`` adds an absolute lower bound on the cutoff, for matrices whose
    natural scale is inherited from a larger computation.
    """
    a = np.asarray(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    tau = max(rank_rtol * max(a.shape) * float(s[0]), floor)
    return int(np.count_nonzero(s > tau))


def range_projector(a, rank_rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthogonal projector onto the column space of ``a``."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return np.zeros((a.shape[0], a.shape[0]), dtype=complex)
    w, s, _ = np.linalg.svd(a)
    tau = rank_rtol * max(a.shape) * (float(s[0]) if s.size else 0.0)
    r = int(np.count_nonzero(s > tau))
    wr = w[:, :r]
    return wr @ wr.conj().T
