"""Hold-out evaluation of forecasting models over a whole dataset.

For every (vm, metric) the last `horizon` rounds are held out, models are
fitted on the rest, and MAE/MASE are reported. Univariate models see one
metric at a time; the vector model is fitted once per VM on all metrics
that survived preprocessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data import MeasurementSet, to_series
from ..errors import (
    DegenerateRange,
    NonConvergence,
    Singular,
    TooShort,
    ZeroDenominator,
)
from .arima import DEFAULT_ORDER, fit_arima
from .metrics import mae, naive_mae
from .preprocess import invert_differencing, normalize, preprocess
from .varmodel import fit_var

KNOWN_MODELS = ("naive", "var", "arima")
DEFAULT_HORIZON = 5
MIN_POINTS = 100


@dataclass(frozen=True)
class ForecastRow:
    provider: str
    vm_class: str
    vm_type: str
    instance: int
    metric: str
    model: str
    mase: float
    mae: float
    horizon: int
    naive_denominator: float


@dataclass(frozen=True)
class SkippedSeries:
    vm: str
    metric: str
    model: str
    reason: str


@dataclass(frozen=True)
class AggregateRow:
    level: str  # "vm" or "provider"
    key: str
    model: str
    mean_mase: float
    mean_mae: float
    n_series: int


@dataclass(frozen=True)
class ForecastReport:
    rows: tuple[ForecastRow, ...]
    skipped: tuple[SkippedSeries, ...]
    horizon: int
    mae_scale: str

    def aggregates(self) -> tuple[AggregateRow, ...]:
        """Mean MASE/MAE per VM and per provider, per model."""
        buckets: dict[tuple[str, str, str], list[ForecastRow]] = {}
        for row in self.rows:
            vm_key = f"{row.provider}/{row.vm_class}/{row.vm_type}-{row.instance}"
            buckets.setdefault(("vm", vm_key, row.model), []).append(row)
            buckets.setdefault(("provider", row.provider, row.model), []).append(row)
        out = []
        for (level, key, model), rows in sorted(buckets.items()):
            out.append(
                AggregateRow(
                    level,
                    key,
                    model,
                    float(np.mean([r.mase for r in rows])),
                    float(np.mean([r.mae for r in rows])),
                    len(rows),
                )
            )
        return tuple(out)


def evaluate_all(
    dataset: MeasurementSet,
    models: tuple[str, ...] = KNOWN_MODELS,
    horizon: int = DEFAULT_HORIZON,
    order: tuple[int, int, int] = DEFAULT_ORDER,
    var_lag: int = 1,
    min_points: int = MIN_POINTS,
    mae_scale: str = "normalized",
) -> ForecastReport:
    for model in models:
        if model not in KNOWN_MODELS:
            raise ValueError(f"unknown model {model!r}, expected one of {KNOWN_MODELS}")
    if mae_scale not in ("normalized", "original"):
        raise ValueError("mae_scale must be 'normalized' or 'original'")

    rows: list[ForecastRow] = []
    skipped: list[SkippedSeries] = []

    for vm in dataset.vms():
        per_vm = dataset.select(vm=vm)
        slug = vm.slug()

        # Align every metric on the union of this VM's rounds.
        columns: dict[str, dict[int, float]] = {}
        for metric in per_vm.metrics():
            series = to_series(per_vm, metric, vm)
            columns[metric] = dict(zip(series.rounds, series.values))
        grid = sorted(set().union(*columns.values())) if columns else []

        prepared = {}  # metric -> (train_norm, z, record, real, real_norm)
        for metric, by_round in sorted(columns.items()):
            if len(by_round) < min_points:
                _skip_all(skipped, slug, metric, models, f"fewer than {min_points} points")
                continue
            full = np.array([by_round.get(r, np.nan) for r in grid], dtype=np.float64)
            train, real = full[:-horizon], full[-horizon:]
            if np.isnan(real).any():
                _skip_all(skipped, slug, metric, models, "missing holdout values")
                continue
            try:
                z, record = preprocess(train, d=order[1])
            except (TooShort, DegenerateRange) as exc:
                _skip_all(skipped, slug, metric, models, type(exc).__name__)
                continue
            train_norm = normalize(np.where(np.isnan(train), record.mean, train), record)
            prepared[metric] = (train_norm, z, record, real, normalize(real, record))

        if not prepared:
            continue

        var_forecasts = {}
        if "var" in models:
            var_metrics = tuple(sorted(prepared))
            panel = np.column_stack([prepared[m][1] for m in var_metrics])
            try:
                var_model = fit_var(panel, lag=var_lag, columns=var_metrics)
                diffed = var_model.forecast(horizon)
                for idx, metric in enumerate(var_metrics):
                    var_forecasts[metric] = invert_differencing(diffed[:, idx], prepared[metric][2])
            except (TooShort, Singular) as exc:
                for metric in var_metrics:
                    skipped.append(SkippedSeries(slug, metric, "var", type(exc).__name__))

        for metric, (train_norm, z, record, real, real_norm) in sorted(prepared.items()):
            denominator = naive_mae(train_norm)
            if denominator == 0.0:
                _skip_all(skipped, slug, metric, models, "ZeroDenominator")
                continue
            for model in models:
                try:
                    fc_norm = _forecast_norm(model, metric, train_norm, z, record, horizon, order, var_forecasts)
                except (TooShort, NonConvergence, ZeroDenominator) as exc:
                    skipped.append(SkippedSeries(slug, metric, model, type(exc).__name__))
                    continue
                if fc_norm is None:  # var already recorded its skip
                    continue
                value_mase = mae(real_norm, fc_norm) / denominator
                if mae_scale == "normalized":
                    value_mae = mae(real_norm, fc_norm)
                else:
                    value_mae = mae(real, record.minimum + fc_norm * record.span)
                rows.append(
                    ForecastRow(
                        vm.provider, vm.vm_class, vm.vm_type, vm.instance,
                        metric, model, float(value_mase), float(value_mae),
                        horizon, float(denominator),
                    )
                )

    return ForecastReport(tuple(rows), tuple(skipped), horizon, mae_scale)


def _skip_all(skipped: list, vm: str, metric: str, models: tuple[str, ...], reason: str) -> None:
    for model in models:
        skipped.append(SkippedSeries(vm, metric, model, reason))


def _forecast_norm(model, metric, train_norm, z, record, horizon, order, var_forecasts):
    if model == "naive":
        return np.full(horizon, train_norm[-1])
    if model == "arima":
        fitted = fit_arima(z, order=order)
        return invert_differencing(fitted.forecast(horizon), record)
    return var_forecasts.get(metric)
