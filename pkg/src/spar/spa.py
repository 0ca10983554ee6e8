"""Structural physical approximation (SPA) of the realignment map.

The SPA mixes the (unphysical) realignment map with the depolarizing map:

    spa(rho; p) = (p/d^2) I + ((1-p)/Tr[R(rho)]) R(rho),    0 <= p <= 1.

For states whose realigned matrix has a real spectrum and positive trace, the
mixing weight needed to make this operator positive is certified from the
first two moments of R(rho) alone (no eigensolve): a variance-type lower
bound on the minimum eigenvalue yields the threshold l, and a Descartes sign
test on the characteristic-polynomial coefficients (built from moments via
the Newton recursion) decides whether R(rho) is already PSD, in which case
l = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import DEFAULT
from .exceptions import DomainError
from .realign import RealignedMatrix, realign
from .states import RHO_T_MAX, DensityMatrix

__all__ = [
    "CharPolyCoeffs",
    "SpaAnalysis",
    "CpCertificate",
    "ReferenceThresholds",
    "lambda_min_lower_bound",
    "newton_coefficients",
    "elementary_symmetric",
    "descartes_psd_test",
    "threshold_value",
    "spa_threshold",
    "apply_spa",
    "analyze_spa",
    "certify_completely_positive",
    "rho_t_reference_thresholds",
]


def lambda_min_lower_bound(m1: float, m2: float, n: int) -> float:
    """Variance lower bound on the minimum of n real numbers with given
    power sums: m1/n - sqrt((n-1) (m2/n - (m1/n)^2)).

    The radicand is nonnegative when the underlying spectrum is real; a
    radicand below -1e-12 signals a complex spectrum and raises
    :class:`DomainError`.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    mean = m1 / n
    variance = m2 / n - mean * mean
    if variance < -1e-12:
        raise DomainError(
            f"negative moment variance {variance:.3e}: spectrum is not real"
        )
    return mean - math.sqrt((n - 1) * max(0.0, variance))


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Coefficients a_0..a_n of prod_i (x - lambda_i) written as
    sum_k (-1)^k a_k x^(n-k), with a_0 = 1.

    ``scales`` carries the accumulated magnitude of each coefficient's
    recursion terms; it is the natural floating-point noise scale for
    deciding whether a coefficient is zero.
    """

    values: np.ndarray
    scales: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.values) - 1


def newton_coefficients(moments) -> CharPolyCoeffs:
    """Characteristic-polynomial coefficients from power sums m_1..m_n.

    Newton's identities: a_k = (1/k) sum_{i=1..k} (-1)^(i-1) a_{k-i} m_i,
    so a_1 = m_1, a_2 = (m_1^2 - m_2)/2, and so on.
    """
    m = np.asarray(moments, dtype=float)
    n = len(m)
    a = np.empty(n + 1)
    scale = np.empty(n + 1)
    a[0] = 1.0
    scale[0] = 1.0
    for k in range(1, n + 1):
        terms = [(-1) ** (i - 1) * a[k - i] * m[i - 1] for i in range(1, k + 1)]
        a[k] = math.fsum(terms) / k
        scale[k] = math.fsum(abs(t) for t in terms) / k
    return CharPolyCoeffs(a, scale)


def elementary_symmetric(eigenvalues) -> np.ndarray:
    """e_0..e_n of the given eigenvalues by direct polynomial expansion.

    Independent oracle for :func:`newton_coefficients` (the coefficients of
    prod (x - lambda_i) are exactly the elementary symmetric polynomials).
    """
    eigs = np.asarray(eigenvalues)
    e = np.zeros(len(eigs) + 1, dtype=eigs.dtype if eigs.dtype.kind == "c" else float)
    e[0] = 1.0
    for i, lam in enumerate(eigs):
        for j in range(min(i + 1, len(eigs)), 0, -1):
            e[j] = e[j] + lam * e[j - 1]
    return e


def descartes_psd_test(coeffs: CharPolyCoeffs, tol: float = DEFAULT.coefficient) -> bool:
    """Sign test: all eigenvalues nonnegative iff every a_k is nonnegative.

    A coefficient within ``tol`` times its recursion scale of zero counts as
    zero, so structurally vanishing coefficients (products of small
    eigenvalues) cannot flip the verdict through rounding noise.
    """
    values = coeffs.values[1:]
    thresholds = tol * coeffs.scales[1:]
    return bool(np.all(values >= -thresholds))


def threshold_value(k: float, trace_r: float, d: int) -> float:
    """Mixing threshold d^2 k / (Tr[R] + d^2 k) for a non-PSD realignment."""
    return d * d * k / (trace_r + d * d * k)


@dataclass(frozen=True)
class SpaAnalysis:
    """SPA data for one (state, p) pair.

    ``lower_bound`` is the moment bound on the minimum eigenvalue of R(rho),
    ``k = max(0, -lower_bound)``, ``l`` the smallest p certified to make the
    SPA output positive, ``psd`` the Descartes verdict on R(rho) and
    ``coefficients`` its characteristic-polynomial coefficients a_1..a_{d^2}.
    ``spa_matrix`` is filled when a specific p is analyzed.
    """

    d: int
    trace_r: float
    lower_bound: float
    k: float
    l: float
    psd: bool
    coefficients: np.ndarray
    p: float | None = None
    spa_matrix: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class CpCertificate:
    """Complete-positivity witness pair for the SPA at a given p.

    When ``certified``, gamma1 = 0 and gamma2 = lambda_max[spa] /
    lambda_max[rho] satisfy lambda_min[spa] >= gamma1 lambda_min[rho] and
    lambda_max[spa] <= gamma2 lambda_max[rho].
    """

    certified: bool
    gamma1: float | None
    gamma2: float | None


def _realigned(rho_or_realigned) -> RealignedMatrix:
    if isinstance(rho_or_realigned, RealignedMatrix):
        return rho_or_realigned
    return realign(rho_or_realigned)


def require_positive_trace(r: RealignedMatrix, tol: float = DEFAULT.trace_positive) -> float:
    """Return Tr[R] after checking it is real and positive."""
    tr = complex(np.trace(r.matrix))
    if abs(tr.imag) > DEFAULT.moment_imag or tr.real <= tol:
        raise DomainError(f"realigned trace {tr} is not positive")
    return tr.real


def require_real_spectrum(r: RealignedMatrix, tol: float = DEFAULT.spectrum_imag) -> np.ndarray:
    """Return the (oracle) eigenvalues of R after checking they are real."""
    eigs = linalg.general_eigenvalues(r.matrix)
    worst = float(np.max(np.abs(eigs.imag))) if eigs.size else 0.0
    if worst > tol:
        raise DomainError(f"realigned spectrum has imaginary part {worst:.3e}")
    return eigs.real


def spa_threshold(rho: DensityMatrix, tol: float = DEFAULT.coefficient) -> SpaAnalysis:
    """Moment-certified positivity threshold for the SPA of one state.

    Requires equal subsystem dimensions with positive realigned trace and
    real realigned spectrum. The PSD branch (l = 0) is decided by the
    moment-based sign test, not by the eigensolver; the eigensolver only
    gates the real-spectrum precondition.
    """
    if rho.dim_a != rho.dim_b:
        raise ValueError("the SPA threshold requires equal subsystem dimensions")
    r = _realigned(rho)
    trace_r = require_positive_trace(r)
    require_real_spectrum(r)
    d = rho.dim_a
    n = d * d
    moments = r.moments(n)
    coeffs = newton_coefficients(moments)
    psd = descartes_psd_test(coeffs, tol=tol)
    lower = lambda_min_lower_bound(moments[0], moments[1], n)
    k = max(0.0, -lower)
    if psd:
        l = 0.0
    elif k <= 0.0:
        raise DomainError(
            "sign test reports a negative eigenvalue but the moment lower bound "
            "is nonnegative; tolerances are inconsistent for this state"
        )
    else:
        l = threshold_value(k, trace_r, d)
    return SpaAnalysis(
        d=d, trace_r=trace_r, lower_bound=lower, k=k, l=l, psd=psd,
        coefficients=coeffs.values[1:].copy(),
    )


def apply_spa(rho: DensityMatrix, p: float) -> np.ndarray:
    """Evaluate (p/d^2) I + ((1-p)/Tr[R]) R(rho).

    Needs equal subsystem dimensions and positive realigned trace; the
    output always has unit trace. Unlike :func:`spa_threshold` this does not
    gate on a real realigned spectrum, since the mixture and its trace norm
    are well defined without it.
    """
    if rho.dim_a != rho.dim_b:
        raise ValueError("the SPA requires equal subsystem dimensions")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    r = _realigned(rho)
    trace_r = require_positive_trace(r)
    n = rho.dim_a * rho.dim_b
    return (p / n) * np.eye(n, dtype=np.complex128) + ((1.0 - p) / trace_r) * r.matrix


def analyze_spa(rho: DensityMatrix, p: float, tol: float = DEFAULT.coefficient) -> SpaAnalysis:
    """Threshold data plus the SPA matrix at the given p."""
    base = spa_threshold(rho, tol=tol)
    matrix = apply_spa(rho, p)
    return SpaAnalysis(
        d=base.d, trace_r=base.trace_r, lower_bound=base.lower_bound, k=base.k,
        l=base.l, psd=base.psd, coefficients=base.coefficients, p=p, spa_matrix=matrix,
    )


def certify_completely_positive(rho: DensityMatrix, p: float) -> CpCertificate:
    """Witness pair for complete positivity of the SPA at p.

    Certified iff p is at or above the moment threshold l. The witnesses use
    the eigensolver: gamma1 is fixed to 0 (the smallest valid choice; the
    minimum eigenvalue of a state can itself be 0, making ratios undefined)
    and gamma2 is the ratio of maximum eigenvalues. An uncertified result is
    a valid outcome, not an error.
    """
    analysis = spa_threshold(rho)
    if p < analysis.l - 1e-12:
        return CpCertificate(False, None, None)
    spa = apply_spa(rho, p)
    lam_spa = linalg.general_eigenvalues(spa).real
    lam_rho = linalg.hermitian_eigenvalues(rho.matrix)
    gamma2 = float(np.max(lam_spa) / np.max(lam_rho))
    return CpCertificate(True, 0.0, gamma2)


@dataclass(frozen=True)
class ReferenceThresholds:
    """Closed-form p boundaries for the two-qubit rho_t family.

    p1 is the positivity threshold of the unnormalized mixture
    (p/d^2) I + (1-p) R for t < 0, p2 the upper edge of the detection window
    on the negative side, p3 the upper edge for 0.116117 < t <= 0.125.
    """

    p1: float
    p2: float
    p3: float


def rho_t_reference_thresholds(t: float) -> ReferenceThresholds:
    """Evaluate the closed-form thresholds; requires |t| <= sqrt(5/2)/2."""
    if abs(t) > RHO_T_MAX + 1e-12:
        raise ValueError(f"thresholds are defined for |t| <= {RHO_T_MAX:.6f}")
    s = math.sqrt(3 * (67 - 112 * t + 64 * t * t))
    p1 = (2 * (13 - 24 * t + 8 * t * t) - s) / (5 - 4 * t) ** 2
    u = 8673 + 9632 * t - 8832 * t**2 - 6144 * t**3 + 4096 * t**4
    p2 = (91 + 48 * t + 64 * t * t - math.sqrt(u)) / (2 * (7 - 48 * t))
    p3 = (14 - 128 * t + 64 * t * t) / (7 - 80 * t + 128 * t * t)
    return ReferenceThresholds(p1=p1, p2=p2, p3=p3)
