"""ARIMA estimation by conditional sum of squares.

The model is fitted on data that has already been differenced `d` times
(see preprocess); `d` is carried in the order for bookkeeping only.
Residuals before the first p observations are conditioned to zero, and
the optimizer minimizes the sum of squared one-step errors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ..errors import NonConvergence, TooShort
from ..kernels import css_residuals

DEFAULT_ORDER = (1, 1, 1)
MAX_ITERATIONS = 500
TOLERANCE = 1e-8

_PENALTY = 1e12


@dataclass(frozen=True)
class ARIMAModel:
    order: tuple[int, int, int]
    ar: tuple[float, ...]
    ma: tuple[float, ...]
    intercept: float
    resid_var: float
    n_obs: int
    z_tail: tuple[float, ...]  # last p fitted-scale observations, oldest first
    resid_tail: tuple[float, ...]  # last q residuals, oldest first

    def forecast(self, h: int) -> np.ndarray:
        """Iterated one-step forecasts on the fitted (differenced) scale."""
        p, _, q = self.order
        history = list(self.z_tail)
        errors = list(self.resid_tail)
        out = np.empty(h)
        for step in range(h):
            value = self.intercept
            for i in range(p):
                value += self.ar[i] * history[-1 - i]
            for j in range(q):
                if len(errors) > j:
                    value += self.ma[j] * errors[-1 - j]
            history.append(value)
            errors.append(0.0)  # future shocks are unknown
            out[step] = value
        return out


def _objective(params: np.ndarray, z: np.ndarray, p: int, q: int) -> float:
    intercept = params[0]
    phi = params[1:1 + p]
    theta = params[1 + p:]
    # keep the search inside the stationary/invertible box
    excess = np.sum(np.maximum(np.abs(np.concatenate([phi, theta])) - 0.999, 0.0))
    if excess > 0:
        return _PENALTY * (1.0 + excess)
    e = css_residuals(z, phi, theta, intercept)
    return float(e @ e)


def fit_arima(
    z: np.ndarray,
    order: tuple[int, int, int] = DEFAULT_ORDER,
    max_iter: int = MAX_ITERATIONS,
    tol: float = TOLERANCE,
) -> ARIMAModel:
    """Fit an ARMA(p, q) by CSS on the (already differenced) series z."""
    p, d, q = order
    if p < 0 or q < 0 or p + q == 0:
        raise ValueError("order must include at least one AR or MA term")
    z = np.asarray(z, dtype=np.float64)
    required = 10 * (p + q + 1)
    if z.size < required:
        raise TooShort(f"need at least {required} points for order {order}, got {z.size}")

    x0 = np.zeros(1 + p + q)
    if p > 0:
        centered = z - z.mean()
        denom = float(centered @ centered)
        if denom > 0:
            r1 = float(centered[1:] @ centered[:-1]) / denom
            x0[1] = np.clip(r1, -0.9, 0.9)
    x0[0] = z.mean() * (1.0 - x0[1:1 + p].sum())

    result = minimize(
        _objective,
        x0,
        args=(z, p, q),
        method="Nelder-Mead",
        options={"maxiter": max_iter, "xatol": tol, "fatol": tol},
    )
    if not np.all(np.isfinite(result.x)):
        raise NonConvergence(result.nit)
    if not result.success and result.nit >= max_iter:
        raise NonConvergence(result.nit)

    intercept = float(result.x[0])
    phi = result.x[1:1 + p]
    theta = result.x[1 + p:]
    resid = css_residuals(z, phi, theta, intercept)
    resid_var = float(resid @ resid) / resid.size if resid.size else 0.0
    return ARIMAModel(
        order=(p, d, q),
        ar=tuple(float(v) for v in phi),
        ma=tuple(float(v) for v in theta),
        intercept=intercept,
        resid_var=resid_var,
        n_obs=int(z.size),
        z_tail=tuple(float(v) for v in z[z.size - p:]) if p else (),
        resid_tail=tuple(float(v) for v in resid[resid.size - q:]) if q else (),
    )
