"""Bipartite density matrices: validation, named state families, random
test ensembles, and the on-disk state format.

Basis convention: the computational product basis |i>|j> ordered
lexicographically, so a dA x dB state lives on indices i*dB + j.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import DEFAULT
from .exceptions import StateValidationError

__all__ = [
    "DensityMatrix",
    "validate_density",
    "rho_t",
    "rho_a",
    "isotropic",
    "alpha_state",
    "bell_state",
    "random_density",
    "random_separable",
    "random_schmidt_symmetric",
    "write_state_file",
    "read_state_file",
    "read_matrix_file",
    "RHO_T_MAX",
]

# Validity bound for the two-qubit family below: sqrt(5/2)/2.
RHO_T_MAX = math.sqrt(2.5) / 2


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated bipartite state with subsystem dimensions (dimA, dimB)."""

    dim_a: int
    dim_b: int
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def __repr__(self) -> str:  # keep 81-number dumps out of test output
        return f"DensityMatrix(dims={self.dim_a}x{self.dim_b})"


def validate_density(m, dims: tuple[int, int], tol: float | None = None) -> DensityMatrix:
    """Check and wrap a candidate density matrix.

    Verifies squareness, dimension product, finite entries, Hermiticity,
    unit trace and positive semidefiniteness (each failure raised as a
    distinct :class:`StateValidationError`).
    """
    if tol is None:
        tol = DEFAULT.validation
    dim_a, dim_b = int(dims[0]), int(dims[1])
    if dim_a < 1 or dim_b < 1:
        raise StateValidationError("dims", f"subsystem dimensions must be positive, got {dims}")
    try:
        a = linalg.as_matrix(m)
    except ValueError as exc:
        raise StateValidationError("finite", str(exc)) from exc
    if a.shape[0] != a.shape[1]:
        raise StateValidationError("shape", f"matrix is not square: {a.shape}")
    if a.shape[0] != dim_a * dim_b:
        raise StateValidationError(
            "dims", f"matrix size {a.shape[0]} != dimA*dimB = {dim_a * dim_b}"
        )
    defect = linalg.hermiticity_defect(a)
    if defect > tol:
        raise StateValidationError("hermitian", f"|M - M^dag| = {defect:.3e} exceeds {tol:.1e}")
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > tol:
        raise StateValidationError("trace", f"trace = {tr} is not 1 within {tol:.1e}")
    lam_min = float(linalg.hermitian_eigenvalues(a, tol=max(tol, DEFAULT.precondition))[0])
    if lam_min < -tol:
        raise StateValidationError("psd", f"minimum eigenvalue {lam_min:.3e} < -{tol:.1e}")
    return DensityMatrix(dim_a, dim_b, a)


# ---------------------------------------------------------------------------
# state families
# ---------------------------------------------------------------------------

def rho_t(t: float) -> DensityMatrix:
    """Two-qubit family with one off-diagonal parameter t, |t| <= sqrt(5/2)/2.

    Entangled for every t != 0; the plain realignment criterion only sees
    |t| > 0.116117.
    """
    if abs(t) > RHO_T_MAX + 1e-12:
        raise ValueError(f"rho_t is a valid state only for |t| <= {RHO_T_MAX:.6f}, got {t}")
    m = 0.5 * np.array(
        [
            [1.25, 0, 0, t],
            [0, 0, 0, 0],
            [0, 0, 0.25, 0],
            [t, 0, 0, 0.5],
        ],
        dtype=np.complex128,
    )
    return validate_density(m, (2, 2))


def rho_a(a: float) -> DensityMatrix:
    """Two-qutrit NPT family mixing |0i> - a|i0| with the diagonal GHZ-like ray.

    Built from the unnormalized vectors |psi_1> = |01> - a|10>,
    |psi_2> = |02> - a|20> and |psi_3> = |00> + |11> + |22>; the prefactor
    1/(5 + 2a^2) normalizes the sum. Valid for 1/sqrt(2) <= a <= 1.
    """
    lo = 1 / math.sqrt(2)
    if not (lo - 1e-12 <= a <= 1 + 1e-12):
        raise ValueError(f"rho_a requires 1/sqrt(2) <= a <= 1, got {a}")
    psi1 = np.zeros(9, dtype=np.complex128)
    psi1[0 * 3 + 1] = 1.0
    psi1[1 * 3 + 0] = -a
    psi2 = np.zeros(9, dtype=np.complex128)
    psi2[0 * 3 + 2] = 1.0
    psi2[2 * 3 + 0] = -a
    psi3 = np.zeros(9, dtype=np.complex128)
    psi3[[0, 4, 8]] = 1.0
    m = sum(np.outer(v, v.conj()) for v in (psi1, psi2, psi3)) / (5 + 2 * a * a)
    return validate_density(m, (3, 3))


def bell_state(d: int) -> np.ndarray:
    """Maximally entangled ket (1/sqrt(d)) sum_i |ii> as a 1-D array."""
    v = np.zeros(d * d, dtype=np.complex128)
    v[:: d + 1] = 1 / math.sqrt(d)
    return v


def isotropic(beta: float, d: int = 3) -> DensityMatrix:
    """Isotropic state beta |phi+><phi+| + (1-beta)/d^2 I on d x d."""
    lo = -1.0 / (d * d - 1)
    if not (lo - 1e-12 <= beta <= 1 + 1e-12):
        raise ValueError(f"isotropic requires {lo:.6f} <= beta <= 1, got {beta}")
    phi = bell_state(d)
    m = beta * np.outer(phi, phi.conj()) + (1 - beta) / (d * d) * np.eye(d * d)
    return validate_density(m, (d, d))


def alpha_state(alpha: float) -> DensityMatrix:
    """The 3x3 bound entangled alpha family (PPT entangled for 0 < alpha < 1)."""
    if not (0 - 1e-12 <= alpha <= 1 + 1e-12):
        raise ValueError(f"alpha_state requires 0 <= alpha <= 1, got {alpha}")
    a = alpha
    m = np.zeros((9, 9), dtype=np.complex128)
    for i in range(9):
        m[i, i] = a
    m[6, 6] = (1 + a) / 2
    m[8, 8] = (1 + a) / 2
    for i, j in ((0, 4), (0, 8), (4, 8)):
        m[i, j] = a
        m[j, i] = a
    root = math.sqrt(max(0.0, 1 - a * a)) / 2
    m[6, 8] = root
    m[8, 6] = root
    return validate_density(m / (8 * a + 1), (3, 3))


# ---------------------------------------------------------------------------
# random ensembles (seeded, reproducible)
# ---------------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_density(dim: int, seed) -> np.ndarray:
    """Ginibre-induced random density matrix of the given dimension."""
    rng = _rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m)


def _random_pure_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_separable(dim_a: int, dim_b: int, terms: int, seed) -> DensityMatrix:
    """Random separable state: a Dirichlet-weighted mixture of pure products."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    m = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=np.complex128)
    for q in weights:
        m += q * np.kron(_random_pure_density(dim_a, rng), _random_pure_density(dim_b, rng))
    return validate_density(m, (dim_a, dim_b))


def random_schmidt_symmetric(d: int, terms: int, seed) -> DensityMatrix:
    """Random state of the form sum_i w_i A_i (x) conj(A_i) with PSD factors.

    PSD factors keep each term A (x) conj(A) positive semidefinite, so the
    mixture is a valid state, and its realignment is a nonnegative sum of
    rank-one projectors, hence PSD: the trace norm of the realignment equals
    its trace.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    m = np.zeros((d * d, d * d), dtype=np.complex128)
    for w in weights:
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        a = g @ g.conj().T
        m += w * np.kron(a, a.conj())
    return validate_density(m / np.trace(m).real, (d, d))


# ---------------------------------------------------------------------------
# state file format (shared with the CLI)
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    """Decimal text with 17 significant digits (lossless for doubles)."""
    return format(float(x), ".17g")


def write_state_file(path, rho: DensityMatrix) -> None:
    """Write ``{"dims": [dA, dB], "matrix": [[re, im], ...]}`` as JSON.

    Entries are row-major; floats carry 17 significant digits so a read
    back reproduces the doubles exactly.
    """
    flat = rho.matrix.reshape(-1)
    pairs = ",\n    ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in flat)
    text = (
        "{\n"
        f'  "dims": [{rho.dim_a}, {rho.dim_b}],\n'
        f'  "matrix": [\n    {pairs}\n  ]\n'
        "}\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_payload(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateValidationError("finite", f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "matrix" not in payload:
        raise StateValidationError("dims", "file needs a 'matrix' field")
    return payload


def read_matrix_file(path) -> np.ndarray:
    """Read a square matrix in the state-file layout, without density checks."""
    raw = _load_payload(path)["matrix"]
    try:
        flat = np.array([complex(re, im) for re, im in raw], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise StateValidationError("finite", f"matrix entries must be [re, im] pairs: {exc}") from exc
    n = int(round(math.isqrt(flat.size)))
    if n * n != flat.size:
        raise StateValidationError("shape", f"matrix length {flat.size} is not a perfect square")
    return flat.reshape(n, n)


def read_state_file(path, tol: float | None = None) -> DensityMatrix:
    """Read and validate a state file written by :func:`write_state_file`."""
    payload = _load_payload(path)
    if "dims" not in payload:
        raise StateValidationError("dims", "state file needs 'dims' and 'matrix' fields")
    dims = payload["dims"]
    if not (isinstance(dims, list) and len(dims) == 2):
        raise StateValidationError("dims", f"dims must be [dA, dB], got {dims!r}")
    return validate_density(read_matrix_file(path), (int(dims[0]), int(dims[1])), tol=tol)
