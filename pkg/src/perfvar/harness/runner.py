"""Round execution: clocks, probe backends, lifecycle hooks.

Trials run strictly sequentially in schedule order. A failing trial is
recorded and the round carries on; a failing lifecycle hook aborts the
round, which the caller records as a provider error.
"""

from __future__ import annotations

import shlex
import subprocess
import time
import zlib
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Mapping, Protocol

from ..data import VMKey
from ..errors import LifecycleHookFailed, ProbeFailed, UnparseableOutput
from .parsers import parse_output
from .suite import SuiteConfig, TrialSchedule
from .synthetic import SyntheticProfile, synth_probe


class Clock(Protocol):
    def now(self) -> datetime: ...

    def tick(self) -> None: ...

    def wait_until(self, target: datetime) -> None: ...


class SimulatedClock:
    """Virtual time: rounds that nominally take an hour run instantly."""

    def __init__(self, start: datetime, trial_step: int = 10):
        if trial_step <= 0:
            raise ValueError("trial_step must be positive")
        self._current = start.astimezone(timezone.utc).replace(microsecond=0)
        self.trial_step = int(trial_step)

    def now(self) -> datetime:
        return self._current

    def tick(self) -> None:
        self._current += timedelta(seconds=self.trial_step)

    def wait_until(self, target: datetime) -> None:
        if target > self._current:
            self._current = target.astimezone(timezone.utc).replace(microsecond=0)


class SystemClock:
    def now(self) -> datetime:
        return datetime.now(timezone.utc).replace(microsecond=0)

    def tick(self) -> None:
        pass

    def wait_until(self, target: datetime) -> None:
        remaining = (target - self.now()).total_seconds()
        if remaining > 0:
            time.sleep(remaining)


class ProbeBackend(Protocol):
    def run(self, benchmark_id: str, at: datetime) -> str: ...


class SyntheticBackend:
    """Resolves benchmark ids to synthetic profiles.

    The salt separates streams of different VMs (and of different run
    seeds) while keeping every draw reproducible.
    """

    def __init__(self, profiles: Mapping[str, SyntheticProfile], salt: int = 0):
        self.profiles = dict(profiles)
        self.salt = salt

    def run(self, benchmark_id: str, at: datetime) -> str:
        profile = self.profiles.get(benchmark_id)
        if profile is None:
            raise ProbeFailed(f"no synthetic profile for benchmark {benchmark_id!r}")
        return synth_probe(profile, at, salt=self.salt)


class CommandBackend:
    """Runs external benchmark commands from templates.

    Templates may reference {benchmark}; stdout is the raw output.
    """

    def __init__(self, commands: Mapping[str, str], timeout: float | None = None):
        self.commands = dict(commands)
        self.timeout = timeout

    def run(self, benchmark_id: str, at: datetime) -> str:
        template = self.commands.get(benchmark_id)
        if template is None:
            raise ProbeFailed(f"no command for benchmark {benchmark_id!r}")
        argv = shlex.split(template.format(benchmark=benchmark_id))
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=self.timeout)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise ProbeFailed(f"{benchmark_id}: {exc}") from exc
        if proc.returncode != 0:
            raise ProbeFailed(f"{benchmark_id}: exit {proc.returncode}: {proc.stderr.strip()[:200]}")
        return proc.stdout


def vm_salt(vm: VMKey, seed: int = 0) -> int:
    """Mixes the run seed and the VM identity into one backend salt."""
    return ((seed & 0xFFFFFFFF) << 32) | zlib.crc32(vm.slug().encode())


@dataclass(frozen=True)
class TrialRecord:
    benchmark: str
    position: int
    repetition: int
    started_at: datetime
    status: str  # ok | benchmark_error | parse_error
    raw: str
    measurements: tuple[tuple[str, float], ...]
    error: str | None = None


@dataclass(frozen=True)
class RoundResult:
    vm: VMKey
    round_index: int
    started_at: datetime
    trials: tuple[TrialRecord, ...]
    provider_error: str | None = None

    @property
    def errors(self) -> int:
        return sum(1 for t in self.trials if t.status != "ok")


def _run_hook(command: str | None, name: str) -> None:
    if command is None:
        return
    try:
        proc = subprocess.run(shlex.split(command), capture_output=True, text=True)
    except OSError as exc:
        raise LifecycleHookFailed(name, str(exc)) from exc
    if proc.returncode != 0:
        raise LifecycleHookFailed(name, f"exit {proc.returncode}: {proc.stderr.strip()[:200]}")


def run_round(
    suite: SuiteConfig,
    schedule: TrialSchedule,
    backend: ProbeBackend,
    clock: Clock,
    vm: VMKey,
) -> RoundResult:
    """Execute one round on one VM, sequentially, in schedule order."""
    started_at = clock.now()
    _run_hook(suite.power_on, "power_on")

    trials = []
    for position, (benchmark_id, repetition) in enumerate(schedule.entries):
        spec = suite.benchmark(benchmark_id)
        at = clock.now()
        raw = ""
        try:
            raw = backend.run(benchmark_id, at)
            values = parse_output(raw, spec.parser)
            record = TrialRecord(
                benchmark_id, position, repetition, at, "ok", raw, tuple(values)
            )
        except ProbeFailed as exc:
            record = TrialRecord(
                benchmark_id, position, repetition, at, "benchmark_error", raw, (), str(exc)
            )
        except UnparseableOutput as exc:
            record = TrialRecord(
                benchmark_id, position, repetition, at, "parse_error", raw, (), str(exc)
            )
        trials.append(record)
        clock.tick()

    _run_hook(suite.power_off, "power_off")
    return RoundResult(vm, schedule.round_index, started_at, tuple(trials))
