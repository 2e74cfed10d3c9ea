"""Measurement records, per-metric series, and CSV ingestion.

The interchange format is a UTF-8 CSV with header
`timestamp,provider,vm_class,vm_type,instance,round,trial,metric,value`,
timestamps in ISO-8601 UTC (second resolution), metric ids from the
catalog, and decimal values.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .catalog import MetricSpec, catalog_by_id
from .errors import EmptySelection, MalformedRow, NonFiniteValue, UnknownMetric

CSV_HEADER = ("timestamp", "provider", "vm_class", "vm_type", "instance", "round", "trial", "metric", "value")


def parse_timestamp(text: str) -> datetime:
    """ISO-8601 instant to an aware UTC datetime. Accepts a trailing Z."""
    text = text.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class VMKey:
    """Identity of one rented instance."""

    provider: str
    vm_class: str
    vm_type: str
    instance: int

    def slug(self) -> str:
        safe_type = self.vm_type.replace("/", "-").replace(" ", "_")
        return f"{self.provider}_{self.vm_class}_{safe_type}-{self.instance}"


@dataclass(frozen=True)
class Measurement:
    metric: str
    vm: VMKey
    round_index: int
    trial_index: int
    timestamp: datetime
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise NonFiniteValue(detail=f"{self.metric}={self.value!r}")
        if self.round_index < 0 or self.trial_index < 0:
            raise ValueError("round and trial indices must be non-negative")


@dataclass(frozen=True, eq=False)
class Series:
    """Ordered per-round values of one metric on one VM.

    `rounds` keeps the source round index of every point so that series of
    different metrics can be aligned even though their trial timestamps
    differ within a round.
    """

    metric: str
    vm: VMKey
    timestamps: tuple[datetime, ...]
    values: np.ndarray
    rounds: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.timestamps) == len(self.values) == len(self.rounds)):
            raise ValueError("timestamps, values and rounds must have equal length")
        if len(self.values) < 1:
            raise ValueError("series must contain at least one point")
        for a, b in zip(self.timestamps, self.timestamps[1:]):
            if b <= a:
                raise ValueError("series timestamps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class IngestError:
    line: int
    kind: str
    detail: str


@dataclass(frozen=True)
class MeasurementSet:
    """Immutable collection of measurements plus any rejected-row records."""

    measurements: tuple[Measurement, ...]
    errors: tuple[IngestError, ...] = ()

    def __len__(self) -> int:
        return len(self.measurements)

    def __iter__(self) -> Iterator[Measurement]:
        return iter(self.measurements)

    def providers(self) -> tuple[str, ...]:
        return tuple(sorted({m.vm.provider for m in self.measurements}))

    def vms(self, provider: str | None = None) -> tuple[VMKey, ...]:
        keys = {m.vm for m in self.measurements if provider is None or m.vm.provider == provider}
        return tuple(sorted(keys, key=lambda k: (k.provider, k.vm_class, k.vm_type, k.instance)))

    def metrics(self) -> tuple[str, ...]:
        return tuple(sorted({m.metric for m in self.measurements}))

    def select(
        self,
        metric: str | None = None,
        vm: VMKey | None = None,
        provider: str | None = None,
    ) -> "MeasurementSet":
        rows = tuple(
            m
            for m in self.measurements
            if (metric is None or m.metric == metric)
            and (vm is None or m.vm == vm)
            and (provider is None or m.vm.provider == provider)
        )
        return MeasurementSet(rows)


def ingest_csv(
    stream: IO[str] | Iterable[str],
    catalog: Sequence[MetricSpec] | None = None,
    on_error: str = "raise",
) -> MeasurementSet:
    """Parse the measurement CSV schema into a MeasurementSet.

    With on_error="raise" the first bad row aborts ingestion; with
    "collect" bad rows are recorded (with their 1-based line number) and
    skipped. Non-finite values are always rejected.
    """
    if on_error not in ("raise", "collect"):
        raise ValueError("on_error must be 'raise' or 'collect'")
    known = catalog_by_id(catalog)
    measurements: list[Measurement] = []
    errors: list[IngestError] = []

    # leading '#' lines carry report provenance and are not data
    numbered = (
        (lineno, line)
        for lineno, line in enumerate(stream, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    )
    physical: list[int] = []

    def _lines():
        for lineno, line in numbered:
            physical.append(lineno)
            yield line

    reader = csv.reader(_lines())
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        raise MalformedRow(physical[-1] if physical else 1,
                           "missing or wrong header, expected " + ",".join(CSV_HEADER))

    for row in reader:
        if not row:
            continue
        lineno = physical[reader.line_num - 1] if reader.line_num <= len(physical) else physical[-1]
        try:
            measurements.append(_parse_row(row, lineno, known))
        except (MalformedRow, UnknownMetric, NonFiniteValue) as exc:
            if on_error == "raise":
                raise
            errors.append(IngestError(lineno, type(exc).__name__, str(exc)))
    return MeasurementSet(tuple(measurements), tuple(errors))


def _parse_row(row: list[str], lineno: int, known: dict[str, MetricSpec]) -> Measurement:
    if len(row) != len(CSV_HEADER):
        raise MalformedRow(lineno, f"expected {len(CSV_HEADER)} fields, got {len(row)}")
    ts, provider, vm_class, vm_type, instance, round_ix, trial_ix, metric, value = (f.strip() for f in row)
    if metric not in known:
        raise UnknownMetric(metric, lineno)
    try:
        timestamp = parse_timestamp(ts)
        key = VMKey(provider, vm_class, vm_type, int(instance))
        round_index = int(round_ix)
        trial_index = int(trial_ix)
        parsed = float(value)
    except (ValueError, TypeError) as exc:
        raise MalformedRow(lineno, str(exc)) from exc
    if not math.isfinite(parsed):
        raise NonFiniteValue(lineno, f"value={value!r}")
    try:
        return Measurement(metric, key, round_index, trial_index, timestamp, parsed)
    except ValueError as exc:
        raise MalformedRow(lineno, str(exc)) from exc


def write_csv(measurements: Iterable[Measurement], stream: IO[str]) -> int:
    """Write measurements in the interchange schema; returns the row count."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for m in measurements:
        writer.writerow(
            (
                format_timestamp(m.timestamp),
                m.vm.provider,
                m.vm.vm_class,
                m.vm.vm_type,
                m.vm.instance,
                m.round_index,
                m.trial_index,
                m.metric,
                repr(m.value),
            )
        )
        count += 1
    return count


def to_series(dataset: MeasurementSet, metric: str, vm: VMKey) -> Series:
    """Collapse a (metric, vm) selection into one point per round.

    The representative value of a round is the arithmetic mean of its
    trial values; points are ordered by round start time (the earliest
    trial timestamp seen in the round). Input row order is irrelevant.
    """
    rounds: dict[int, list[Measurement]] = {}
    for m in dataset.measurements:
        if m.metric == metric and m.vm == vm:
            rounds.setdefault(m.round_index, []).append(m)
    if not rounds:
        raise EmptySelection(f"no measurements for metric={metric} vm={vm.slug()}")

    points = []
    for round_index, rows in rounds.items():
        start = min(r.timestamp for r in rows)
        mean = sum(r.value for r in rows) / len(rows)
        points.append((start, round_index, mean))
    points.sort(key=lambda p: (p[0], p[1]))
    timestamps = tuple(p[0] for p in points)
    values = np.array([p[2] for p in points], dtype=np.float64)
    round_indices = tuple(p[1] for p in points)
    return Series(metric, vm, timestamps, values, round_indices)
