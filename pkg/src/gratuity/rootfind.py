"""Deterministic bracketed scalar root-finding."""

from __future__ import annotations

from typing import Callable

from .errors import BracketingError, ParameterError


def solve_bracketed(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> float:
    """Bisect ``f`` on [lo, hi] until |f| <= tol or the interval width <= tol.

    Requires a sign change: f(lo) * f(hi) <= 0.  Plain bisection halves the
    interval the same way on every run, so results are bit-for-bit
    reproducible regardless of how ill-conditioned ``f`` is.
    """
    if not tol > 0.0:
        raise ParameterError(f"tol must be positive, got {tol!r}", field="tol")
    if not lo < hi:
        raise ParameterError(f"invalid bracket [{lo!r}, {hi!r}]", field="lo")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketingError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:  # interval exhausted at float resolution
            break
        fmid = f(mid)
        if abs(fmid) <= tol:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
