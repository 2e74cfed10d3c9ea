"""Series preprocessing: imputation, min-max scaling, differencing, and a
unit-root check used to confirm the differenced series is stationary."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateRange, TooShort

# 5% critical value of the Dickey-Fuller t-distribution, regression with
# constant, large-sample limit.
ADF_CRITICAL_5PCT = -2.86

MIN_WINDOW = 30


@dataclass(frozen=True)
class TransformRecord:
    """Everything needed to undo the training-window transform."""

    minimum: float
    maximum: float
    mean: float  # imputation value (training mean)
    imputed: tuple[int, ...]
    diff_order: int
    level_tail: tuple[float, ...]  # last normalized value at each differencing stage

    @property
    def span(self) -> float:
        return self.maximum - self.minimum


def preprocess(values: np.ndarray, d: int = 1) -> tuple[np.ndarray, TransformRecord]:
    """Mean-impute, min-max normalize, then difference d times.

    `values` is the training window; NaN entries are treated as missing.
    Normalization statistics come from this window only. The returned
    series has length len(values) - d.
    """
    if d not in (0, 1, 2):
        raise ValueError("differencing order must be 0, 1 or 2")
    x = np.asarray(values, dtype=np.float64).copy()
    if x.size < MIN_WINDOW:
        raise TooShort(f"training window needs at least {MIN_WINDOW} points, got {x.size}")
    missing = np.flatnonzero(np.isnan(x))
    observed = x[~np.isnan(x)]
    if observed.size == 0:
        raise TooShort("training window is entirely missing")
    mean = float(observed.mean())
    x[missing] = mean

    minimum = float(x.min())
    maximum = float(x.max())
    if maximum == minimum:
        raise DegenerateRange("training window is constant")
    y = (x - minimum) / (maximum - minimum)

    tail = []
    z = y
    for _ in range(d):
        tail.append(float(z[-1]))
        z = np.diff(z)
    record = TransformRecord(minimum, maximum, mean, tuple(missing.tolist()), d, tuple(tail))
    return z, record


def normalize(values: np.ndarray, record: TransformRecord) -> np.ndarray:
    return (np.asarray(values, dtype=np.float64) - record.minimum) / record.span


def denormalize(values: np.ndarray, record: TransformRecord) -> np.ndarray:
    return record.minimum + np.asarray(values, dtype=np.float64) * record.span


def invert_differencing(forecast_diff: np.ndarray, record: TransformRecord) -> np.ndarray:
    """Undo differencing by cumulative summation from the stored tails,
    most-differenced stage first; stays on the normalized scale."""
    cur = np.asarray(forecast_diff, dtype=np.float64)
    for stage in range(record.diff_order - 1, -1, -1):
        cur = record.level_tail[stage] + np.cumsum(cur, axis=0)
    return cur


def invert_transform(forecast_diff: np.ndarray, record: TransformRecord) -> np.ndarray:
    """Undo differencing and then min-max scaling."""
    return denormalize(invert_differencing(forecast_diff, record), record)


def adf_check(values: np.ndarray, max_lag: int = 1) -> tuple[float, bool]:
    """Augmented Dickey-Fuller regression with constant, no trend.

    Returns (t statistic of the lagged level, stationary flag). The series
    is declared stationary when the statistic falls below the 5% critical
    value.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 25:
        raise TooShort(f"unit-root check needs at least 25 points, got {x.size}")
    dx = np.diff(x)
    nobs = dx.size - max_lag
    y = dx[max_lag:]
    columns = [np.ones(nobs), x[max_lag:-1]]
    for j in range(1, max_lag + 1):
        columns.append(dx[max_lag - j:-j])
    design = np.column_stack(columns)

    beta, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < design.shape[1]:
        # constant or collinear input: no evidence against the unit root
        return 0.0, False
    resid = y - design @ beta
    dof = nobs - design.shape[1]
    sigma2 = float(resid @ resid) / dof
    cov = np.linalg.inv(design.T @ design) * sigma2
    t_stat = float(beta[1] / np.sqrt(cov[1, 1]))
    return t_stat, t_stat < ADF_CRITICAL_5PCT
