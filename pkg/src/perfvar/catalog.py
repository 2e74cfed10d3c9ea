"""Metric catalog and VM descriptors.

Every collected value belongs to one of 28 metrics produced by six probe
benchmarks. Each metric carries an optimization direction: HIB when a
higher reading means better service (throughput, rates), LIB when a lower
reading does (latencies, durations).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from enum import Enum
from typing import IO, Iterable


class Direction(str, Enum):
    HIB = "HIB"
    LIB = "LIB"


class VMClass(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"


@dataclass(frozen=True)
class MetricSpec:
    id: str
    benchmark: str
    meaning: str
    unit: str
    direction: Direction


@dataclass(frozen=True)
class VMDescriptor:
    provider: str
    vm_class: VMClass
    type_name: str
    instance_ordinal: int
    vcpus: int
    ram_gib: float
    cost_per_hour: float

    def __post_init__(self):
        if self.vcpus <= 0:
            raise ValueError("vcpus must be positive")
        if self.ram_gib <= 0:
            raise ValueError("ram_gib must be positive")
        if self.cost_per_hour < 0:
            raise ValueError("cost_per_hour must be non-negative")
        if self.instance_ordinal <= 0:
            raise ValueError("instance_ordinal must be positive")


_H = Direction.HIB
_L = Direction.LIB

_CATALOG: tuple[MetricSpec, ...] = (
    # CPU
    MetricSpec("CPU_EVENTS", "Sysbench", "events (e) per second", "e/s", _H),
    MetricSpec("CPU_LAT", "Sysbench", "avg latency", "ms", _L),
    MetricSpec("CPU_TH_LAT", "Sysbench", "threads avg latency", "ms", _L),
    MetricSpec("CPU_SHA256", "Nench", "SHA256 execution", "s", _L),
    MetricSpec("CPU_BZIP2", "Nench", "bzip2 execution", "s", _L),
    MetricSpec("CPU_AES", "Nench", "AES execution", "s", _L),
    MetricSpec("CPU_DUR", "CPUBench", "mean duration", "s", _L),
    # Memory
    MetricSpec("MEM_SPEED", "Sysbench", "speed", "MiB/s", _H),
    MetricSpec("MEM_LAT", "Sysbench", "avg latency", "ms", _L),
    # Disk
    MetricSpec("DISK_FILE_R", "Sysbench", "file op - read", "reads/s", _H),
    MetricSpec("DISK_FILE_W", "Sysbench", "file op - write", "writes/s", _H),
    MetricSpec("DISK_FILE_F", "Sysbench", "file op - fsync", "fsyncs/s", _H),
    MetricSpec("DISK_THR_R", "Sysbench", "throughput - read", "MiB/s", _H),
    MetricSpec("DISK_THR_W", "Sysbench", "throughput - write", "MiB/s", _H),
    MetricSpec("DISK_LAT", "Sysbench", "avg latency", "ms", _L),
    MetricSpec("DISK_SEEK", "Nench", "ioping - avg seek rate", "us", _L),
    MetricSpec("DISK_SEQ_R", "Nench", "ioping - seq. read speed", "MiB/s", _H),
    MetricSpec("DISK_SEQ_W", "Nench", "dd - avg seq. write speed", "MiB/s", _H),
    MetricSpec("DISKB_LAT", "DDBench", "dd - s. blk (latency)", "MB/s", _L),
    MetricSpec("DISKB_THR", "DDBench", "dd - l. blk (throughput)", "MB/s", _H),
    # Network
    MetricSpec("NET_1", "Nench", "DL - Cachefly CDN", "MiB/s", _H),
    MetricSpec("NET_2", "Nench", "DL - Leaseweb (NL)", "MiB/s", _H),
    MetricSpec("NET_3", "Nench", "DL - Softlayer DAL (US)", "MiB/s", _H),
    MetricSpec("NET_4", "Nench", "DL - Online.net (FR)", "MiB/s", _H),
    MetricSpec("NET_5", "Nench", "DL - OVH BHS (CA)", "MiB/s", _H),
    MetricSpec("NETB_1", "DownloadBench", "DL - url 1 (1 GB)", "MiB/s", _H),
    MetricSpec("NETB_2", "DownloadBench", "DL - url 2 (100 MB)", "MiB/s", _H),
    # Application
    MetricSpec("APPB", "WebBench", "requests per second", "req/s", _H),
)


def default_catalog() -> tuple[MetricSpec, ...]:
    """All 28 metric specs, each classified HIB or LIB."""
    return _CATALOG


def catalog_by_id(catalog: Iterable[MetricSpec] | None = None) -> dict[str, MetricSpec]:
    return {spec.id: spec for spec in (catalog or _CATALOG)}


def dump_catalog(catalog: Iterable[MetricSpec], stream: IO[str]) -> None:
    json.dump([asdict(spec) for spec in catalog], stream, indent=2)


def load_catalog(stream: IO[str]) -> tuple[MetricSpec, ...]:
    raw = json.load(stream)
    specs = []
    for item in raw:
        item = dict(item)
        item["direction"] = Direction(item["direction"])
        specs.append(MetricSpec(**item))
    ids = [s.id for s in specs]
    if len(ids) != len(set(ids)):
        raise ValueError("duplicate metric ids in catalog")
    return tuple(specs)


# Reference VM fleet: four size classes per provider, six instances each
# (classes C1 and C3 run two instances). Costs are per hour; a federation
# provider that charges nothing uses 0.
_VM_TABLE = (
    # provider, class, type, instances, vcpus, ram, cost
    ("aws", VMClass.C1, "a1.large", 2, 2, 4, 0.0582),
    ("azure", VMClass.C1, "A2-v2", 2, 2, 4, 0.0870),
    ("gcp", VMClass.C1, "E2-T1", 2, 2, 4, 0.0713),
    ("egi", VMClass.C1, "T1", 2, 2, 4, 0.0),
    ("aws", VMClass.C2, "a1.xlarge", 1, 4, 8, 0.1164),
    ("azure", VMClass.C2, "A4-v2", 1, 4, 8, 0.1830),
    ("gcp", VMClass.C2, "E2-T2", 1, 4, 8, 0.1425),
    ("egi", VMClass.C2, "T2", 1, 4, 8, 0.0),
    ("aws", VMClass.C3, "m5.large", 2, 2, 8, 0.1150),
    ("azure", VMClass.C3, "B2MS", 2, 2, 8, 0.0960),
    ("gcp", VMClass.C3, "N1-T1", 2, 2, 8, 0.1250),
    ("egi", VMClass.C3, "T3", 2, 2, 8, 0.0),
    ("aws", VMClass.C4, "m5.xlarge", 1, 4, 16, 0.2300),
    ("azure", VMClass.C4, "B4MS", 1, 4, 16, 0.1920),
    ("gcp", VMClass.C4, "N1-T2", 1, 4, 16, 0.2501),
    ("egi", VMClass.C4, "T4", 1, 4, 16, 0.0),
)


def default_vms() -> tuple[VMDescriptor, ...]:
    """Reference fleet of 24 VM descriptors (6 per provider)."""
    out = []
    for provider, cls, type_name, count, vcpus, ram, cost in _VM_TABLE:
        for ordinal in range(1, count + 1):
            out.append(VMDescriptor(provider, cls, type_name, ordinal, vcpus, ram, cost))
    return tuple(out)
