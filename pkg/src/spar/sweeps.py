"""Parameter sweeps, boundary bisection and the detection-window table.

Grid evaluation is deterministic and parameter-major; boundary search uses
plain bisection, which relies on the violation region being an interval in
the swept variable (true for every family handled here).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator

from .config import DEFAULT
from .criteria import q1_realignment_moments, q2_rmoment, spa_r_upper_bound, spa_r_verdict
from .exceptions import DomainError
from .linalg import trace_norm
from .realign import Verdict, realign
from .spa import apply_spa, spa_threshold
from .states import DensityMatrix, alpha_state, isotropic, rho_a, rho_t

__all__ = [
    "FAMILIES",
    "family_state",
    "bisect_boundary",
    "violation_p_max",
    "sweep_rows",
    "table1_rows",
    "TABLE1_ALPHAS",
]

FAMILIES: dict[str, Callable[[float], DensityMatrix]] = {
    "rho_t": rho_t,
    "rho_a": rho_a,
    "isotropic": isotropic,
    "alpha_state": alpha_state,
}

TABLE1_ALPHAS = tuple(round(0.1 * i, 1) for i in range(1, 10))


def family_state(name: str, param: float) -> DensityMatrix:
    try:
        ctor = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return ctor(param)


def bisect_boundary(
    predicate: Callable[[float], bool], lo: float, hi: float, tol: float = 1e-7
) -> float:
    """Locate the flip point of a boolean predicate between lo and hi.

    ``predicate(lo)`` and ``predicate(hi)`` must differ; the returned value
    is within ``tol`` of the crossing.
    """
    flo = bool(predicate(lo))
    if bool(predicate(hi)) == flo:
        raise ValueError(f"predicate does not change between {lo} and {hi}")
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if bool(predicate(mid)) == flo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def violation_p_max(
    rho: DensityMatrix, tol: float = 1e-7, verdict_tol: float = DEFAULT.verdict
) -> float | None:
    """Largest p at which the SPA separability bound is violated.

    Assumes the violated set is an interval starting at p = 0 (it always
    ends before p = 1, where the bound is saturated). Returns None when the
    state is not detected even at p = 0.
    """
    def violated(p: float) -> bool:
        return spa_r_verdict(rho, p, tol=verdict_tol) == Verdict.ENTANGLED

    if not violated(0.0):
        return None
    return bisect_boundary(violated, 0.0, 1.0, tol=tol)


def sweep_rows(
    family: str,
    params: Iterable[float],
    ps: Iterable[float],
    verdict_tol: float = DEFAULT.verdict,
) -> Iterator[dict]:
    """Grid rows for one family, parameter-major.

    Columns: param, p, traceNormSpaR, upperBound, violated, l, k, q1, q2
    (q2 empty outside 3x3 systems). Threshold data that cannot be certified
    for a grid point (realigned spectrum not real) is reported as NaN rather
    than aborting the sweep.
    """
    ps = list(ps)
    for param in params:
        rho = family_state(family, param)
        r = realign(rho)
        trace_r = r.trace
        try:
            threshold = spa_threshold(rho)
            l, k = threshold.l, threshold.k
        except DomainError:
            l, k = float("nan"), float("nan")
        q1 = q1_realignment_moments(rho)
        q2 = q2_rmoment(rho) if (rho.dim_a, rho.dim_b) == (3, 3) else None
        for p in ps:
            norm = trace_norm(apply_spa(rho, p))
            bound = spa_r_upper_bound(trace_r, p)
            yield {
                "param": param,
                "p": p,
                "traceNormSpaR": norm,
                "upperBound": bound,
                "violated": int(norm > bound + verdict_tol),
                "l": l,
                "k": k,
                "q1": q1,
                "q2": q2,
            }


def table1_rows(
    alphas: Iterable[float] = TABLE1_ALPHAS, tol: float = 1e-7
) -> list[dict]:
    """Largest violating p for each alpha-state parameter."""
    rows = []
    for alpha in alphas:
        p_max = violation_p_max(alpha_state(alpha), tol=tol)
        rows.append({"alpha": alpha, "p_max": p_max})
    return rows
