"""Vector autoregression fitted by per-equation ordinary least squares."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import Singular, TooShort


@dataclass(frozen=True, eq=False)
class VARModel:
    lag: int
    intercept: np.ndarray  # (k,)
    coef: np.ndarray  # (lag, k, k); coef[L, i, j] weighs series j at lag L+1 in equation i
    z_tail: np.ndarray  # (lag, k) most recent observations, oldest first
    n_obs: int
    columns: tuple[str, ...]

    @property
    def k(self) -> int:
        return self.intercept.size

    def forecast(self, h: int) -> np.ndarray:
        """Iterated one-step forecasts, shape (h, k)."""
        history = [row.copy() for row in self.z_tail]
        out = np.empty((h, self.k))
        for step in range(h):
            value = self.intercept.copy()
            for L in range(self.lag):
                value += self.coef[L] @ history[-1 - L]
            history.append(value)
            out[step] = value
        return out


def fit_var(z: np.ndarray, lag: int = 1, columns: tuple[str, ...] | None = None) -> VARModel:
    """OLS fit of a VAR(lag) on z with shape (T, k)."""
    if lag < 1:
        raise ValueError("lag must be positive")
    z = np.asarray(z, dtype=np.float64)
    if z.ndim == 1:
        z = z[:, None]
    T, k = z.shape
    required = 10 * k * lag
    if T < required:
        raise TooShort(f"need at least {required} observations for k={k}, lag={lag}, got {T}")

    rows = T - lag
    design = np.ones((rows, 1 + k * lag))
    for L in range(1, lag + 1):
        design[:, 1 + (L - 1) * k:1 + L * k] = z[lag - L:T - L]
    target = z[lag:]

    beta, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < design.shape[1]:
        raise Singular(f"design matrix rank {rank} < {design.shape[1]} (collinear regressors)")

    intercept = beta[0].copy()
    coef = np.empty((lag, k, k))
    for L in range(lag):
        coef[L] = beta[1 + L * k:1 + (L + 1) * k].T
    if columns is None:
        columns = tuple(f"y{i}" for i in range(k))
    return VARModel(lag, intercept, coef, z[T - lag:].copy(), T, tuple(columns))
