"""Forecast accuracy measures."""

from __future__ import annotations

import numpy as np

from ..errors import LengthMismatch, TooShort, ZeroDenominator


def mae(real, predicted) -> float:
    """Mean absolute error."""
    real = np.asarray(real, dtype=np.float64)
    predicted = np.asarray(predicted, dtype=np.float64)
    if real.shape != predicted.shape:
        raise LengthMismatch(f"shapes {real.shape} and {predicted.shape} differ")
    if real.size == 0:
        raise LengthMismatch("empty input")
    return float(np.mean(np.abs(real - predicted)))


def naive_mae(training) -> float:
    """In-sample MAE of the one-step naive rule (predict the previous value)."""
    training = np.asarray(training, dtype=np.float64)
    if training.size < 2:
        raise TooShort("naive baseline needs at least 2 training points")
    return float(np.mean(np.abs(np.diff(training))))


def mase(real, predicted, training) -> float:
    """MAE scaled by the naive one-step error over the training series.

    A value below 1 means the forecast beats the naive model.
    """
    denominator = naive_mae(training)
    if denominator == 0.0:
        raise ZeroDenominator("constant training series")
    return mae(real, predicted) / denominator
