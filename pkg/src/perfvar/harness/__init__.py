"""Benchmark harness: suite planning, probes, execution, persistence."""

from .parsers import PARSERS, parse_output
from .runner import (
    CommandBackend,
    RoundResult,
    SimulatedClock,
    SyntheticBackend,
    SystemClock,
    TrialRecord,
    run_round,
    vm_salt,
)
from .store import load_rounds, persist_round, rounds_to_measurements
from .suite import BenchmarkSpec, SuiteConfig, TrialSchedule, default_suite, plan_round
from .synthetic import MetricProfile, SyntheticProfile, synth_probe

__all__ = [
    "BenchmarkSpec",
    "CommandBackend",
    "MetricProfile",
    "PARSERS",
    "RoundResult",
    "SimulatedClock",
    "SuiteConfig",
    "SyntheticBackend",
    "SyntheticProfile",
    "SystemClock",
    "TrialRecord",
    "TrialSchedule",
    "default_suite",
    "load_rounds",
    "parse_output",
    "persist_round",
    "plan_round",
    "rounds_to_measurements",
    "run_round",
    "synth_probe",
    "vm_salt",
]
