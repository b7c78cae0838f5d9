"""Input validation helpers, in the spirit of ``sklearn.utils.validation``."""
import numpy as np

from .exceptions import AsymmetricMatrixError, DimensionError

SYMMETRY_REJECT = 1e-8


def check_vector(v, size=None, name="vector"):
    """Return ``v`` as a 1-D float array, checking its length if ``size`` is given."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {arr.shape}")
    if size is not None and arr.shape[0] != size:
        raise DimensionError(f"{name} must have length {size}, got {arr.shape[0]}")
    return arr


def check_symmetric_matrix(A, size=None, name="matrix", reject=SYMMETRY_REJECT):
    """Return the symmetric part of ``A``.

    Raises if the infinity-norm of ``A - A.T`` exceeds ``reject``.
    """
    arr = np.asarray(A, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    if size is not None and arr.shape[0] != size:
        raise DimensionError(f"{name} must be {size}x{size}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    asym = np.max(np.abs(arr - arr.T)) if arr.size else 0.0
    if asym > reject:
        raise AsymmetricMatrixError(f"{name} is not symmetric (max |A - A^T| = {asym:.3g})")
    return 0.5 * (arr + arr.T)


def check_matrix(H, name="matrix"):
    arr = np.asarray(H, dtype=float)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr
