"""Variability indicator: breadth, dispersion, and speed of fluctuations.

All three components are percentages relative to the series mean, so the
indicator is scale-free and equals 0 for a perfectly stable series:

* breadth     |mean(C)| of the thresholded percent-deviation vector C
* dispersion  population relative standard deviation of the series
* speed       population standard deviation of the series gradient,
              relative to the mean

The indicator is their weighted sum with non-negative weights summing
to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .catalog import Direction, catalog_by_id
from .data import MeasurementSet, to_series
from .errors import EmptyGroup, EmptySelection, TooShort, ZeroMean

_WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class VIWeights:
    breadth: float
    dispersion: float
    speed: float

    def __post_init__(self):
        for w in (self.breadth, self.dispersion, self.speed):
            if not 0.0 <= w <= 1.0:
                raise ValueError("weights must lie in [0, 1]")
        if abs(self.breadth + self.dispersion + self.speed - 1.0) > _WEIGHT_TOL:
            raise ValueError("weights must sum to 1")


EQUAL_WEIGHTS = VIWeights(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


@dataclass(frozen=True)
class VIResult:
    breadth: float
    dispersion: float
    speed: float
    vi: float
    n_points: int
    threshold: float
    weights: VIWeights


def variation_vector(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Percent deviation of each value from the series mean."""
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2:
        raise TooShort("variation vector needs at least 2 points")
    mu = x.mean()
    if mu == 0.0:
        raise ZeroMean("series mean is zero")
    return (x - mu) / mu * 100.0


def change_vector(v: np.ndarray, direction: Direction, threshold: float = 0.0) -> np.ndarray:
    """Keep only the deviations that count as degradations.

    For HIB metrics a drop below the mean is a degradation, so entries
    with v < -threshold*100 survive; for LIB metrics entries with
    v > +threshold*100 survive. Everything else becomes 0. The threshold
    is a fraction (0.1 filters variations smaller than 10%).
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    v = np.asarray(v, dtype=np.float64)
    cut = threshold * 100.0
    if direction == Direction.HIB:
        keep = v < -cut
    else:
        keep = v > cut
    return np.where(keep, v, 0.0)


def breadth(c: np.ndarray) -> float:
    """Magnitude of the average retained deviation, in percent."""
    c = np.asarray(c, dtype=np.float64)
    if c.size == 0:
        raise TooShort("change vector is empty")
    return float(abs(c.mean()))


def dispersion(values: Sequence[float] | np.ndarray) -> float:
    """Population relative standard deviation, in percent."""
    x = np.asarray(values, dtype=np.float64)
    if x.size < 2:
        raise TooShort("dispersion needs at least 2 points")
    mu = x.mean()
    if mu == 0.0:
        raise ZeroMean("series mean is zero")
    return float(np.std(x) / mu * 100.0)


def speed(values: Sequence[float] | np.ndarray) -> float:
    """Relative standard deviation of the gradient, in percent.

    The gradient uses central differences on interior points and
    one-sided differences at both ends.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size < 3:
        raise TooShort("speed needs at least 3 points")
    mu = x.mean()
    if mu == 0.0:
        raise ZeroMean("series mean is zero")
    grad = np.gradient(x)
    return float(np.std(grad) / mu * 100.0)


def vi(
    values: Sequence[float] | np.ndarray,
    direction: Direction,
    threshold: float = 0.0,
    weights: VIWeights = EQUAL_WEIGHTS,
) -> VIResult:
    """Weighted variability indicator of one series."""
    x = np.asarray(values, dtype=np.float64)
    b = breadth(change_vector(variation_vector(x), direction, threshold))
    d = dispersion(x)
    s = speed(x)
    total = weights.breadth * b + weights.dispersion * d + weights.speed * s
    return VIResult(b, d, s, total, int(x.size), threshold, weights)


@dataclass(frozen=True)
class VISeriesRow:
    provider: str
    vm_class: str
    vm_type: str
    instance: int
    metric: str
    result: VIResult


@dataclass(frozen=True)
class VIGroup:
    provider: str
    vm_class: str
    breadth: float
    dispersion: float
    speed: float
    vi: float
    n_series: int
    n_skipped: int


@dataclass(frozen=True)
class VITable:
    rows: tuple[VISeriesRow, ...]
    groups: tuple[VIGroup, ...]
    skipped: tuple[tuple[str, str, str], ...]  # (vm slug, metric, reason)


def aggregate_vi(
    dataset: MeasurementSet,
    threshold: float = 0.0,
    weights: VIWeights = EQUAL_WEIGHTS,
    catalog=None,
) -> VITable:
    """Per-series indicators plus provider-by-class means.

    Group values are arithmetic means of the per-(instance, metric)
    components over everything computable in the group; series that are
    too short or have zero mean are skipped and counted.
    """
    directions = {mid: spec.direction for mid, spec in catalog_by_id(catalog).items()}
    rows: list[VISeriesRow] = []
    skipped: list[tuple[str, str, str]] = []
    groups: dict[tuple[str, str], list[VIResult]] = {}
    group_skips: dict[tuple[str, str], int] = {}

    for vm in dataset.vms():
        key = (vm.provider, vm.vm_class)
        groups.setdefault(key, [])
        group_skips.setdefault(key, 0)
        per_vm = dataset.select(vm=vm)
        for metric in per_vm.metrics():
            direction = directions.get(metric)
            if direction is None:
                skipped.append((vm.slug(), metric, "UnknownMetric"))
                group_skips[key] += 1
                continue
            try:
                series = to_series(per_vm, metric, vm)
                result = vi(series.values, direction, threshold, weights)
            except (TooShort, ZeroMean, EmptySelection) as exc:
                skipped.append((vm.slug(), metric, type(exc).__name__))
                group_skips[key] += 1
                continue
            rows.append(VISeriesRow(vm.provider, vm.vm_class, vm.vm_type, vm.instance, metric, result))
            groups[key].append(result)

    table_groups = []
    for key in sorted(groups):
        results = groups[key]
        if not results:
            raise EmptyGroup(f"no computable series in group {key[0]}/{key[1]}")
        table_groups.append(
            VIGroup(
                key[0],
                key[1],
                float(np.mean([r.breadth for r in results])),
                float(np.mean([r.dispersion for r in results])),
                float(np.mean([r.speed for r in results])),
                float(np.mean([r.vi for r in results])),
                len(results),
                group_skips[key],
            )
        )
    return VITable(tuple(rows), tuple(table_groups), tuple(skipped))
