"""Spectra of ``Q = H H^T`` and ``R = H^T H`` for a linear map ``H: R^m -> R^n``.

``alpha`` / ``beta`` are the largest eigenvalues of Q / R (the maxima of
``||H^T x||^2`` and ``||H y||^2`` on unit spheres) and ``gamma`` / ``delta`` the
smallest positive ones. Both pairs coincide; ``spectral_summary`` computes
each side independently so the identities can be checked.
"""
from dataclasses import dataclass

import numpy as np

from .validation import check_matrix

POSITIVE_CUTOFF = 1e-10


@dataclass(frozen=True)
class SpectralSummary:
    alpha: float
    beta: float
    gamma: float  # None when H = 0
    delta: float  # None when H = 0
    rank: int
    rank_R: int
    ker_Q_dim: int
    ker_R_dim: int
    eig_Q: np.ndarray
    eig_R: np.ndarray
    alpha_witness: np.ndarray

    @property
    def lambda_min_Q(self):
        return float(self.eig_Q[0]) if self.eig_Q.size else 0.0

    @property
    def lambda_min_R(self):
        return float(self.eig_R[0]) if self.eig_R.size else 0.0

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
            "rank": self.rank,
            "ker_Q_dim": self.ker_Q_dim,
            "ker_R_dim": self.ker_R_dim,
            "lambda_min_Q": self.lambda_min_Q,
            "lambda_min_R": self.lambda_min_R,
        }


def _positive(eigs, cutoff):
    thr = cutoff * max(1.0, float(eigs[-1]))
    return eigs[eigs > thr]


def spectral_summary(H, cutoff=POSITIVE_CUTOFF):
    """Eigen-summary of ``H H^T`` and ``H^T H`` via symmetric eigensolvers.

    Eigenvalues below ``cutoff * max(1, lambda_max)`` are treated as zero.
    """
    H = check_matrix(H, "H")
    n, m = H.shape
    Q = H @ H.T
    R = H.T @ H
    wQ, UQ = np.linalg.eigh(0.5 * (Q + Q.T))
    wR = np.linalg.eigvalsh(0.5 * (R + R.T))
    # PSD by construction; clip roundoff below zero
    wQ = np.maximum(wQ, 0.0)
    wR = np.maximum(wR, 0.0)
    posQ = _positive(wQ, cutoff)
    posR = _positive(wR, cutoff)
    rank_Q, rank_R = posQ.size, posR.size
    return SpectralSummary(
        alpha=float(wQ[-1]),
        beta=float(wR[-1]),
        gamma=float(posQ[0]) if rank_Q else None,
        delta=float(posR[0]) if rank_R else None,
        rank=rank_Q,
        rank_R=rank_R,
        ker_Q_dim=n - rank_Q,
        ker_R_dim=m - rank_R,
        eig_Q=wQ,
        eig_R=wR,
        alpha_witness=UQ[:, -1],
    )


def kernel_image_flags(H, cutoff=POSITIVE_CUTOFF):
    """Return ``(Im H == R^n, ker H == {0})``."""
    s = spectral_summary(H, cutoff)
    n, m = np.shape(H)
    return s.rank == n, s.rank_R == m
