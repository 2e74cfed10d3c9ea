"""Append-only NDJSON bins for round results.

One file per VM. Records are self-describing JSON objects, one per line;
a truncated or malformed line surfaces as corruption with its byte
offset. Loading reproduces the persisted rounds exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Iterable

from ..data import Measurement, MeasurementSet, VMKey, format_timestamp, parse_timestamp
from ..errors import StoreCorrupt
from .runner import RoundResult, TrialRecord

_REQUIRED_KEYS = {"vm", "round_index", "started_at", "trials"}


def round_to_record(result: RoundResult) -> dict:
    return {
        "vm": {
            "provider": result.vm.provider,
            "vm_class": result.vm.vm_class,
            "vm_type": result.vm.vm_type,
            "instance": result.vm.instance,
        },
        "round_index": result.round_index,
        "started_at": format_timestamp(result.started_at),
        "provider_error": result.provider_error,
        "trials": [
            {
                "benchmark": t.benchmark,
                "position": t.position,
                "repetition": t.repetition,
                "started_at": format_timestamp(t.started_at),
                "status": t.status,
                "raw": t.raw,
                "measurements": [[m, v] for m, v in t.measurements],
                "error": t.error,
            }
            for t in result.trials
        ],
    }


def record_to_round(record: dict) -> RoundResult:
    vm = VMKey(
        record["vm"]["provider"],
        record["vm"]["vm_class"],
        record["vm"]["vm_type"],
        int(record["vm"]["instance"]),
    )
    trials = tuple(
        TrialRecord(
            t["benchmark"],
            int(t["position"]),
            int(t["repetition"]),
            parse_timestamp(t["started_at"]),
            t["status"],
            t["raw"],
            tuple((m, float(v)) for m, v in t["measurements"]),
            t.get("error"),
        )
        for t in record["trials"]
    )
    return RoundResult(
        vm,
        int(record["round_index"]),
        parse_timestamp(record["started_at"]),
        trials,
        record.get("provider_error"),
    )


def persist_round(path: str | Path, result: RoundResult) -> None:
    """Append one round to the bin file."""
    line = json.dumps(round_to_record(result), separators=(",", ":"), sort_keys=True)
    with open(path, "a", encoding="utf-8") as stream:
        stream.write(line + "\n")


def load_rounds(path: str | Path) -> list[RoundResult]:
    """All rounds of one bin, in persisted order."""
    rounds = []
    offset = 0
    with open(path, "rb") as stream:
        for raw_line in stream:
            line = raw_line.decode("utf-8", errors="replace").strip()
            if line:
                try:
                    record = json.loads(line)
                    if not isinstance(record, dict) or not _REQUIRED_KEYS.issubset(record):
                        raise ValueError("missing required keys")
                    rounds.append(record_to_round(record))
                except (ValueError, KeyError, TypeError) as exc:
                    raise StoreCorrupt(offset, str(exc)) from exc
            offset += len(raw_line)
    return rounds


def rounds_to_measurements(rounds: Iterable[RoundResult]) -> MeasurementSet:
    """Flatten stored rounds into the measurement schema.

    Each parsed value becomes one row stamped with its trial's start time
    and schedule position.
    """
    measurements = []
    for result in rounds:
        for trial in result.trials:
            for metric, value in trial.measurements:
                measurements.append(
                    Measurement(
                        metric,
                        result.vm,
                        result.round_index,
                        trial.position,
                        trial.started_at,
                        value,
                    )
                )
    return MeasurementSet(tuple(measurements))
