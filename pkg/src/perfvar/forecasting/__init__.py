"""Time-series forecasting: preprocessing, models, and evaluation."""

from .arima import ARIMAModel, fit_arima
from .evaluate import ForecastReport, ForecastRow, evaluate_all
from .metrics import mae, mase, naive_mae
from .preprocess import TransformRecord, adf_check, invert_transform, preprocess
from .varmodel import VARModel, fit_var

__all__ = [
    "ARIMAModel",
    "ForecastReport",
    "ForecastRow",
    "TransformRecord",
    "VARModel",
    "adf_check",
    "evaluate_all",
    "fit_arima",
    "fit_var",
    "invert_transform",
    "mae",
    "mase",
    "naive_mae",
    "preprocess",
]
