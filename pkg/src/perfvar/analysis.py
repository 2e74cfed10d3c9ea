"""Descriptive analyses: RSD summaries, tail filtering, correlation,
gradient coincidence, and the cost/performance ratio."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .catalog import Direction
from .data import MeasurementSet, Series, VMKey, to_series
from .errors import (
    EmptySelection,
    InsufficientOverlap,
    NonPositivePerformance,
    TooShort,
    ZeroMean,
)
from .variability import dispersion


@dataclass(frozen=True)
class RSDRow:
    metric: str
    avg: float
    min: float
    max: float
    n_vms: int


@dataclass(frozen=True)
class RSDSummary:
    provider: str
    rows: tuple[RSDRow, ...]
    skipped: tuple[tuple[str, str, str], ...]  # (vm slug, metric, reason)


def rsd_summary(
    dataset: MeasurementSet,
    provider: str,
    percentile_bounds: tuple[float, float] | None = None,
) -> RSDSummary:
    """Average, minimum, and maximum RSD per metric across a provider's VMs.

    With percentile_bounds=(lo, hi) each per-VM series is tail-filtered
    before its RSD is computed.
    """
    selection = dataset.select(provider=provider)
    if len(selection) == 0:
        raise EmptySelection(f"no measurements for provider {provider!r}")

    per_metric: dict[str, list[float]] = {}
    skipped: list[tuple[str, str, str]] = []
    for vm in selection.vms():
        per_vm = selection.select(vm=vm)
        for metric in per_vm.metrics():
            try:
                series = to_series(per_vm, metric, vm)
                values = series.values
                if percentile_bounds is not None:
                    values = percentile_filter(values, *percentile_bounds)
                per_metric.setdefault(metric, []).append(dispersion(values))
            except (TooShort, ZeroMean, EmptySelection) as exc:
                skipped.append((vm.slug(), metric, type(exc).__name__))
    if not per_metric:
        raise EmptySelection(f"no computable series for provider {provider!r}")

    rows = tuple(
        RSDRow(metric, float(np.mean(vals)), float(np.min(vals)), float(np.max(vals)), len(vals))
        for metric, vals in sorted(per_metric.items())
    )
    return RSDSummary(provider, rows, tuple(skipped))


def percentile_cutoffs(values: np.ndarray, lo: float = 5.0, hi: float = 95.0) -> tuple[float, float]:
    """Percentile bounds by linear interpolation between closest ranks."""
    x = np.asarray(values, dtype=np.float64)
    plo, phi = np.percentile(x, [lo, hi], method="linear")
    return float(plo), float(phi)


def percentile_filter(
    values: Sequence[float] | np.ndarray,
    lo: float = 5.0,
    hi: float = 95.0,
    cutoffs: tuple[float, float] | None = None,
) -> np.ndarray:
    """Drop the tails outside the [lo, hi] percentile band, keeping order.

    Bounds are inclusive. Passing explicit cutoffs reuses bounds computed
    elsewhere (e.g. to re-apply a filter), making the operation a no-op on
    data already inside them.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 20:
        raise TooShort("percentile filter needs at least 20 points")
    if cutoffs is None:
        cutoffs = percentile_cutoffs(x, lo, hi)
    plo, phi = cutoffs
    return x[(x >= plo) & (x <= phi)]


@dataclass(frozen=True)
class CorrelationMatrix:
    metrics: tuple[str, ...]
    matrix: np.ndarray  # symmetric, unit diagonal

    def pair(self, a: str, b: str) -> float:
        return float(self.matrix[self.metrics.index(a), self.metrics.index(b)])


def correlation_matrix(series_by_metric: Mapping[str, Series]) -> CorrelationMatrix:
    """Pearson correlation between metric series of one VM, aligned by round.

    Rounds missing for either metric of a pair are dropped pairwise; a
    pair must share at least 3 rounds.
    """
    metrics = tuple(sorted(series_by_metric))
    if not metrics:
        raise EmptySelection("no series given")
    by_round: dict[str, dict] = {
        m: dict(zip(series_by_metric[m].rounds, series_by_metric[m].values)) for m in metrics
    }
    k = len(metrics)
    out = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            common = sorted(set(by_round[metrics[i]]) & set(by_round[metrics[j]]))
            if len(common) < 3:
                raise InsufficientOverlap((metrics[i], metrics[j]), len(common))
            a = np.array([by_round[metrics[i]][t] for t in common])
            b = np.array([by_round[metrics[j]][t] for t in common])
            sa, sb = a.std(), b.std()
            if sa == 0.0 or sb == 0.0:
                rho = 0.0  # constant series carries no correlation signal
            else:
                rho = float(np.corrcoef(a, b)[0, 1])
            out[i, j] = out[j, i] = rho
    return CorrelationMatrix(metrics, out)


def vm_correlation(dataset: MeasurementSet, vm: VMKey) -> CorrelationMatrix:
    selection = dataset.select(vm=vm)
    if len(selection) == 0:
        raise EmptySelection(f"no measurements for {vm.slug()}")
    series = {m: to_series(selection, m, vm) for m in selection.metrics()}
    return correlation_matrix(series)


def provider_correlation(dataset: MeasurementSet, provider: str) -> CorrelationMatrix:
    """Mean of the per-VM correlation matrices of one provider.

    Only metrics present on every VM of the provider enter the mean.
    """
    vms = dataset.vms(provider=provider)
    if not vms:
        raise EmptySelection(f"no measurements for provider {provider!r}")
    per_vm = [vm_correlation(dataset, vm) for vm in vms]
    shared = sorted(set.intersection(*(set(c.metrics) for c in per_vm)))
    if not shared:
        raise EmptySelection("providers VMs share no metrics")
    k = len(shared)
    acc = np.zeros((k, k))
    for corr in per_vm:
        idx = [corr.metrics.index(m) for m in shared]
        acc += corr.matrix[np.ix_(idx, idx)]
    return CorrelationMatrix(tuple(shared), acc / len(per_vm))


@dataclass(frozen=True)
class CoincidenceVerdict:
    metric_a: str
    metric_b: str
    n: int
    overlap: int
    threshold: float
    related: bool


def _top_gradient_points(values: np.ndarray, n: int) -> set[int]:
    y = values / values.mean()
    g = np.abs(np.diff(y))
    # ties at the cut rank resolve toward the earlier time point
    order = np.lexsort((np.arange(g.size), -g))
    return set(order[:n].tolist())


def gradient_coincidence(
    series_a: Series,
    series_b: Series,
    n: int = 100,
    threshold: float = 0.6,
) -> CoincidenceVerdict:
    """Do two metrics change sharply at the same times?

    Each series is normalized by its mean; gradients between subsequent
    values are ranked by magnitude and the n strongest time points kept.
    The metrics are related when the two sets share more than n*threshold
    points.
    """
    a, b = series_a.values, series_b.values
    if len(a) != len(b) or series_a.rounds != series_b.rounds:
        raise ValueError("series must be aligned on the same rounds")
    if len(a) <= n:
        raise TooShort(f"need more than {n} points, got {len(a)}")
    if a.mean() == 0.0 or b.mean() == 0.0:
        raise ZeroMean("series mean is zero")
    overlap = len(_top_gradient_points(a, n) & _top_gradient_points(b, n))
    return CoincidenceVerdict(
        series_a.metric, series_b.metric, n, overlap, threshold, overlap > n * threshold
    )


def cpr(mean_value: float, direction: Direction, cost_per_hour: float) -> float:
    """Cost/performance ratio; lower is better.

    HIB metrics divide cost by performance (cost per delivered unit); LIB
    metrics multiply (cost-weighted badness). A zero cost yields 0, which
    ranking code must treat as excluded rather than best.
    """
    if mean_value <= 0:
        raise NonPositivePerformance(f"mean value {mean_value} must be positive")
    if cost_per_hour < 0:
        raise ValueError("cost_per_hour must be non-negative")
    if direction == Direction.HIB:
        return cost_per_hour / mean_value
    return cost_per_hour * mean_value


@dataclass(frozen=True)
class CPRRow:
    provider: str
    vm_class: str
    vm_type: str
    instance: int
    metric: str
    mean_value: float
    ratio: float
    excluded: bool  # free capacity is not rankable


def cpr_table(
    dataset: MeasurementSet,
    costs: Mapping[tuple[str, str], float],
    metrics: Sequence[str],
    directions: Mapping[str, Direction],
) -> tuple[CPRRow, ...]:
    """CPR per (vm, metric) from per-series means.

    costs maps (provider, type_name) to an hourly price.
    """
    rows = []
    for vm in dataset.vms():
        cost = costs.get((vm.provider, vm.vm_type))
        if cost is None:
            continue
        per_vm = dataset.select(vm=vm)
        for metric in metrics:
            try:
                series = to_series(per_vm, metric, vm)
            except EmptySelection:
                continue
            mean_value = float(series.values.mean())
            ratio = cpr(mean_value, directions[metric], cost)
            rows.append(
                CPRRow(vm.provider, vm.vm_class, vm.vm_type, vm.instance, metric, mean_value, ratio, cost == 0.0)
            )
    return tuple(rows)
