"""
Complex linear-algebra kernels

Dense complex helpers shared by the channel model, the training designs and
both estimators. All functions are pure and return new arrays.
"""

import numpy as np
import scipy.linalg

from app.core.exceptions import InvalidDimensionError, SingularSystemError


# Smallest singular value accepted relative to the largest one.
RANK_TOLERANCE = 1e-10


def as_complex_vector(v) -> np.ndarray:
    """Coerce to a 1-D complex128 array with finite entries."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1:
        raise InvalidDimensionError(f"expected a vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidDimensionError("vector contains NaN or Inf entries")
    return arr


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex128 array with finite entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise InvalidDimensionError(f"expected a matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidDimensionError("matrix contains NaN or Inf entries")
    return arr


def dft_matrix(n: int) -> np.ndarray:
    """Unitary n-point DFT matrix, W[k, l] = exp(-j2*pi*k*l/n) / sqrt(n)."""
    if n < 1:
        raise InvalidDimensionError(f"DFT size must be positive, got {n}")
    return scipy.linalg.dft(n, scale="sqrtn")


def first_columns(m, k: int) -> np.ndarray:
    """Leading k columns of m."""
    m = as_complex_matrix(m)
    if k < 1 or k > m.shape[1]:
        raise InvalidDimensionError(f"cannot take {k} columns of a {m.shape[0]}x{m.shape[1]} matrix")
    return m[:, :k].copy()


def linear_convolve(a, b) -> np.ndarray:
    """Direct linear convolution, length len(a) + len(b) - 1."""
    a = as_complex_vector(a)
    b = as_complex_vector(b)
    if a.size == 0 or b.size == 0:
        raise InvalidDimensionError("convolution operands must be non-empty")
    return np.convolve(a, b)


def cyclic_shift(v, k: int) -> np.ndarray:
    """Circular shift downwards by k steps: w[i] = v[(i - k) mod n]."""
    v = as_complex_vector(v)
    if v.size == 0:
        raise InvalidDimensionError("cannot shift an empty vector")
    return np.roll(v, k % v.size)


def is_scaled_identity(gram: np.ndarray, scale: float, rtol: float = 1e-9) -> bool:
    """True when gram equals scale * I within rtol relative (Frobenius)."""
    n = gram.shape[0]
    if scale <= 0:
        return False
    residual = np.linalg.norm(gram - scale * np.eye(n))
    return bool(residual <= rtol * scale * np.sqrt(n))


def ls_solve(A, B) -> np.ndarray:
    """
    Left least-squares solve, X = (A^H A)^-1 A^H B.

    Args:
        A: Tall matrix with full column rank
        B: Right-hand side, vector or matrix with rows(A) rows

    Returns:
        Minimizer of ||AX - B||_F, same trailing shape as B

    Raises:
        SingularSystemError: if A is rank deficient under RANK_TOLERANCE
    """
    A = as_complex_matrix(A)
    B = np.asarray(B, dtype=np.complex128)
    rows, cols = A.shape
    if rows < cols:
        raise InvalidDimensionError(f"left solve needs rows >= cols, got {rows}x{cols}")
    if B.shape[0] != rows:
        raise InvalidDimensionError(f"right-hand side has {B.shape[0]} rows, expected {rows}")

    X, _, _, sv = scipy.linalg.lstsq(A, B, lapack_driver="gelsd")
    if sv.size == 0 or sv[-1] <= RANK_TOLERANCE * sv[0]:
        raise SingularSystemError(
            f"rank-deficient {rows}x{cols} system (singular value ratio "
            f"{(sv[-1] / sv[0]) if sv.size and sv[0] > 0 else 0.0:.3e})"
        )
    return X


def right_ls_solve(B, A) -> np.ndarray:
    """
    Right least-squares solve, X = B A^H (A A^H)^-1.

    Computed as the conjugate transpose of ls_solve(A^H, B^H).
    """
    A = as_complex_matrix(A)
    B = as_complex_matrix(B)
    if A.shape[1] < A.shape[0]:
        raise InvalidDimensionError(f"right solve needs cols >= rows, got {A.shape[0]}x{A.shape[1]}")
    if B.shape[1] != A.shape[1]:
        raise InvalidDimensionError(f"left-hand side has {B.shape[1]} columns, expected {A.shape[1]}")
    return ls_solve(A.conj().T, B.conj().T).conj().T


def min_singular_ratio(A) -> float:
    """Smallest over largest singular value, 0 for an all-zero matrix."""
    sv = np.linalg.svd(as_complex_matrix(A), compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0.0
    return float(sv[-1] / sv[0])


def db(value: float) -> float:
    """Linear power ratio to decibels; -inf for zero."""
    return 10.0 * float(np.log10(value)) if value > 0 else float("-inf")


def undb(value_db: float) -> float:
    """Decibels to linear power ratio."""
    return float(10.0 ** (value_db / 10.0))
