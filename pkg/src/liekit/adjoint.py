"""Adjoint representations and numerical checks of the exponential map."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra
from .errors import BranchError
from .numlin import mat_exp, mat_log_principal

__all__ = [
    "AdOperator",
    "BCHEstimate",
    "Ad",
    "Ad_matrix",
    "ad_operator",
    "check_ad_exp",
    "bch_order_estimate",
    "conjugation_triple_check",
    "campbell_slopes",
]

MEMBERSHIP_TOL = 1e-9
EXACT_TOL = 1e-10


@dataclass(frozen=True)
class AdOperator:
    matrix: np.ndarray   # d x d, acts on coordinates
    source: np.ndarray   # group element g or algebra coordinates of X
    kind: str            # "Ad" or "ad"

    def __matmul__(self, y):
        return self.matrix @ y


def Ad(L: LieAlgebra, g, x) -> np.ndarray:
    """Coordinates of g X g^-1.  MembershipError if the result leaves the algebra."""
    g = np.asarray(g, dtype=complex)
    Y = g @ L.matrix(x) @ np.linalg.inv(g)
    return L.coords(Y, tol=MEMBERSHIP_TOL)


def Ad_matrix(L: LieAlgebra, g) -> AdOperator:
    """Ad(g) as a d x d matrix on coordinates, built column by column."""
    g = np.asarray(g, dtype=complex)
    ginv = np.linalg.inv(g)
    cols = [L.coords(g @ X @ ginv, tol=MEMBERSHIP_TOL) for X in L.basis]
    M = np.array(cols).T if cols else np.zeros((0, 0))
    return AdOperator(M, g, "Ad")


def ad_operator(L: LieAlgebra, x) -> AdOperator:
    x = np.asarray(x, dtype=float)
    return AdOperator(L.ad(x), x, "ad")


def check_ad_exp(L: LieAlgebra, x) -> float:
    """|| Ad(exp X) - exp(ad X) ||_F."""
    g = mat_exp(L.matrix(x))
    lhs = Ad_matrix(L, g).matrix
    rhs = mat_exp(ad_operator(L, x).matrix)
    return float(np.linalg.norm(lhs - rhs))


@dataclass(frozen=True)
class BCHEstimate:
    """Result of a log-log remainder fit.  ``exact`` marks remainders that are
    zero to rounding (commuting inputs); ``slope`` is None then."""

    exact: bool
    slope: float | None
    ts: np.ndarray
    errors: np.ndarray


def _fit_slope(ts, errs) -> BCHEstimate:
    errs = np.asarray(errs)
    if np.all(errs < EXACT_TOL):
        return BCHEstimate(True, None, np.asarray(ts), errs)
    slope = np.polyfit(np.log(ts), np.log(np.maximum(errs, 1e-300)), 1)[0]
    return BCHEstimate(False, float(slope), np.asarray(ts), errs)


def _with_retry(residuals, ts):
    try:
        return ts, [residuals(t) for t in ts]
    except BranchError:
        ts = ts * 0.1
        return ts, [residuals(t) for t in ts]


def _grid(points=10):
    return np.logspace(-1, -3, points)


def bch_order_estimate(L: LieAlgebra, x, y, order: int = 2, points: int = 10) -> BCHEstimate:
    """Slope of log E(t) against log t for the BCH remainder of the given order."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    X, Y = L.matrix(x), L.matrix(y)
    XY = X @ Y - Y @ X

    def remainder(t):
        Z = mat_log_principal(mat_exp(t * X) @ mat_exp(t * Y))
        T = t * (X + Y)
        if order == 2:
            T = T + 0.5 * t * t * XY
        return float(np.linalg.norm(Z - T))

    ts, errs = _with_retry(remainder, _grid(points))
    return _fit_slope(ts, errs)


def conjugation_triple_check(L: LieAlgebra, x, y, t: float) -> tuple[float, float]:
    """Remainders of
    log(e^{tX} e^{tY} e^{-tX}) - (tY + t^2 [X,Y]) and
    log(e^{-tX} e^{-tY} e^{tX} e^{tY}) - t^2 [X,Y]."""
    X, Y = L.matrix(x), L.matrix(y)
    XY = X @ Y - Y @ X
    eX, eY = mat_exp(t * X), mat_exp(t * Y)
    emX, emY = mat_exp(-t * X), mat_exp(-t * Y)
    conj = mat_log_principal(eX @ eY @ emX)
    comm = mat_log_principal(emX @ emY @ eX @ eY)
    r2 = np.linalg.norm(conj - (t * Y + t * t * XY))
    r3 = np.linalg.norm(comm - t * t * XY)
    return float(r2), float(r3)


def campbell_slopes(L: LieAlgebra, x, y, points: int = 10) -> tuple[BCHEstimate, BCHEstimate]:
    """Log-log fits for both conjugation formulas over the standard t grid."""
    ts, res = _with_retry(lambda t: conjugation_triple_check(L, x, y, t), _grid(points))
    res = np.array(res)
    return _fit_slope(ts, res[:, 0]), _fit_slope(ts, res[:, 1])
