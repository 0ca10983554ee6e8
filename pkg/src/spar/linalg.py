"""Dense complex linear algebra primitives.

Everything here operates on plain ``numpy.ndarray`` values (complex128) and
delegates the heavy lifting to LAPACK through numpy. Matrices in this package
are small (9 x 9 at most in practice), so no sparse or blocked paths exist.
All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT

__all__ = [
    "as_matrix",
    "kron",
    "vec",
    "hermiticity_defect",
    "is_hermitian",
    "hermitian_eigenvalues",
    "general_eigenvalues",
    "singular_values",
    "trace_norm",
    "power_trace",
]


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-D complex128 array and require finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product, size (a.rows*b.rows) x (a.cols*b.cols)."""
    return np.kron(as_matrix(a), as_matrix(b))


def vec(m) -> np.ndarray:
    """Column-stacking vectorization.

    Columns of ``m`` are stacked top to bottom, so entry (r, c) of an
    n x k matrix lands at position c*n + r of the output (1-D array).
    """
    return as_matrix(m).flatten(order="F")


def hermiticity_defect(m) -> float:
    """Largest entrywise deviation of ``m`` from its conjugate transpose."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("hermiticity is only defined for square matrices")
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(m, tol: float = DEFAULT.precondition) -> bool:
    return hermiticity_defect(m) <= tol


def hermitian_eigenvalues(m, tol: float = DEFAULT.precondition) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order.

    Raises ``ValueError`` for non-square or non-Hermitian (beyond ``tol``)
    input.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues require a square matrix")
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    return np.linalg.eigvalsh(a)


def general_eigenvalues(m) -> np.ndarray:
    """All eigenvalues (with multiplicity) of a square complex matrix.

    Standard balanced Hessenberg + shifted-QR path via LAPACK; numpy raises
    ``LinAlgError`` if the iteration fails to converge, which signals a
    pathological input. Used as the test oracle for realigned matrices whose
    production code paths work through moments instead.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues require a square matrix")
    return np.linalg.eigvals(a)


def singular_values(m) -> np.ndarray:
    """Singular values in descending order, min(rows, cols) of them."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def trace_norm(m) -> float:
    """Trace norm: the sum of singular values."""
    return float(np.sum(singular_values(m)))


def power_trace(m, k: int) -> complex:
    """Tr[m^k] by repeated multiplication, k >= 1."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("power trace requires a square matrix")
    if k < 1:
        raise ValueError("power trace requires k >= 1")
    acc = a
    for _ in range(k - 1):
        acc = acc @ a
    return complex(np.trace(acc))
