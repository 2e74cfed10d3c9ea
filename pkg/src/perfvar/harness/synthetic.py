"""Synthetic probe: deterministic, parseable stand-in for real benchmarks.

Each metric draws from base * (1 + diurnal + weekend + noise + spike).
Draws are a pure function of (profile seed, salt, metric, timestamp), so a
re-run of the same schedule reproduces every byte.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from datetime import datetime
from typing import Mapping

import numpy as np


@dataclass(frozen=True)
class MetricProfile:
    base: float
    noise: float = 0.0  # relative gaussian sigma
    diurnal_amplitude: float = 0.0
    diurnal_phase: float = 0.0  # radians; -pi/2 peaks at noon
    weekend_offset: float = 0.0  # relative shift on Saturday/Sunday
    spike_probability: float = 0.0
    spike_magnitude: float = 0.0  # relative jump when a spike fires

    def __post_init__(self):
        if self.base <= 0:
            raise ValueError("base must be positive")
        if self.noise < 0:
            raise ValueError("noise amplitude must be non-negative")
        if not 0.0 <= self.spike_probability <= 1.0:
            raise ValueError("spike probability must lie in [0, 1]")


@dataclass(frozen=True)
class SyntheticProfile:
    metrics: Mapping[str, MetricProfile] = field(default_factory=dict)
    seed: int = 0


def _metric_value(profile: SyntheticProfile, metric: str, mp: MetricProfile, at: datetime, salt: int) -> float:
    hour = at.hour + at.minute / 60.0 + at.second / 3600.0
    diurnal = mp.diurnal_amplitude * math.sin(2.0 * math.pi * hour / 24.0 + mp.diurnal_phase)
    weekend = mp.weekend_offset if at.weekday() >= 5 else 0.0
    rng = np.random.default_rng(
        [profile.seed, salt, zlib.crc32(metric.encode()), int(at.timestamp())]
    )
    noise = rng.normal(0.0, mp.noise) if mp.noise > 0 else 0.0
    spike = mp.spike_magnitude if rng.random() < mp.spike_probability else 0.0
    return mp.base * (1.0 + diurnal + weekend + noise + spike)


def synth_probe(profile: SyntheticProfile, at: datetime, salt: int = 0) -> str:
    """Text output of one synthetic trial, one `metric value` line per
    metric, parseable by the `synthetic` parser."""
    lines = ["# synthetic probe"]
    for metric in sorted(profile.metrics):
        value = _metric_value(profile, metric, profile.metrics[metric], at, salt)
        lines.append(f"{metric} {value!r}")
    return "\n".join(lines) + "\n"
