"""Benchmark suite configuration and randomized trial scheduling.

A round executes every benchmark of the suite a configured number of
times; the order of the full trial multiset is a fresh seeded random
permutation each round, which de-biases measurements against slow drifts
within the round.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BenchmarkSpec:
    id: str
    repetitions: int
    parser: str
    metrics: tuple[str, ...]
    command: str | None = None  # external command template
    profile: str | None = None  # synthetic profile name

    def __post_init__(self):
        if self.repetitions <= 0:
            raise ValueError(f"benchmark {self.id!r}: repetitions must be positive")
        if (self.command is None) == (self.profile is None):
            raise ValueError(f"benchmark {self.id!r}: exactly one of command/profile required")


@dataclass(frozen=True)
class SuiteConfig:
    benchmarks: tuple[BenchmarkSpec, ...]
    round_period: float = 3600.0
    power_on: str | None = None
    power_off: str | None = None

    def __post_init__(self):
        ids = [b.id for b in self.benchmarks]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate benchmark ids")
        if self.round_period <= 0:
            raise ValueError("round_period must be positive")

    @property
    def planned_trials(self) -> int:
        return sum(b.repetitions for b in self.benchmarks)

    def benchmark(self, benchmark_id: str) -> BenchmarkSpec:
        for b in self.benchmarks:
            if b.id == benchmark_id:
                return b
        raise KeyError(benchmark_id)


@dataclass(frozen=True)
class TrialSchedule:
    round_index: int
    entries: tuple[tuple[str, int], ...]  # (benchmark id, repetition ordinal)
    seed: int

    def __len__(self) -> int:
        return len(self.entries)


def plan_round(suite: SuiteConfig, round_index: int, seed: int) -> TrialSchedule:
    """Random permutation of the round's trial multiset.

    Deterministic for a fixed (suite, round_index, seed); different rounds
    draw from independent streams of the same seed.
    """
    if round_index < 0:
        raise ValueError("round_index must be non-negative")
    pool = [(b.id, rep) for b in suite.benchmarks for rep in range(1, b.repetitions + 1)]
    rng = np.random.default_rng([seed, round_index])
    order = rng.permutation(len(pool))
    return TrialSchedule(round_index, tuple(pool[i] for i in order), seed)


# Default synthetic suite: repetition counts follow the reference
# collection cadence (34 trials per round).
_DEFAULT_BENCHMARKS = (
    ("ddbench", 10, ("DISKB_LAT", "DISKB_THR")),
    ("download", 10, ("NETB_1", "NETB_2")),
    ("cpubench", 5, ("CPU_DUR",)),
    ("sysbench", 3, (
        "CPU_EVENTS", "CPU_LAT", "CPU_TH_LAT", "MEM_SPEED", "MEM_LAT",
        "DISK_FILE_R", "DISK_FILE_W", "DISK_FILE_F", "DISK_THR_R", "DISK_THR_W", "DISK_LAT",
    )),
    ("nench", 3, (
        "CPU_SHA256", "CPU_BZIP2", "CPU_AES", "DISK_SEEK", "DISK_SEQ_R", "DISK_SEQ_W",
        "NET_1", "NET_2", "NET_3", "NET_4", "NET_5",
    )),
    ("webbench", 3, ("APPB",)),
)


def default_suite(round_period: float = 3600.0) -> SuiteConfig:
    """The 34-trial synthetic suite covering all 28 metrics."""
    benchmarks = tuple(
        BenchmarkSpec(bid, reps, "synthetic", metrics, profile=bid)
        for bid, reps, metrics in _DEFAULT_BENCHMARKS
    )
    return SuiteConfig(benchmarks, round_period=round_period)
