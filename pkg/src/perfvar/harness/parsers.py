"""Raw-output parsers, one per benchmark adapter.

Parsers extract whatever values are present; a missing line means a
missing metric, not an error. Only output with nothing recognizable in it
is rejected.
"""

from __future__ import annotations

import re
from typing import Callable

from ..errors import UnparseableOutput

ParsedValues = list[tuple[str, float]]

_NUM = r"([0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)"


def parse_synthetic(raw: str) -> ParsedValues:
    out = []
    for line in raw.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 2:
            try:
                out.append((parts[0], float(parts[1])))
            except ValueError:
                continue
    return out


def parse_sysbench(raw: str) -> ParsedValues:
    """Combined cpu + memory + fileio run (11 metrics).

    Section-sensitive because each block prints its own `avg:` latency.
    """
    out = []
    section = None
    for line in raw.splitlines():
        stripped = line.strip()
        if re.search(r"\bcpu run\b", stripped):
            section = "cpu"
        elif re.search(r"\bmemory run\b", stripped):
            section = "memory"
        elif re.search(r"\bfileio run\b", stripped):
            section = "fileio"

        m = re.search(rf"events per second:\s*{_NUM}", stripped)
        if m:
            out.append(("CPU_EVENTS", float(m.group(1))))
            continue
        m = re.search(rf"latency avg \(ms\):\s*{_NUM}", stripped)
        if m and section == "cpu":
            out.append(("CPU_TH_LAT", float(m.group(1))))
            continue
        m = re.search(rf"\({_NUM} MiB/sec\)", stripped)
        if m:
            out.append(("MEM_SPEED", float(m.group(1))))
            continue
        m = re.search(rf"^reads/s:\s*{_NUM}", stripped)
        if m:
            out.append(("DISK_FILE_R", float(m.group(1))))
            continue
        m = re.search(rf"^writes/s:\s*{_NUM}", stripped)
        if m:
            out.append(("DISK_FILE_W", float(m.group(1))))
            continue
        m = re.search(rf"^fsyncs/s:\s*{_NUM}", stripped)
        if m:
            out.append(("DISK_FILE_F", float(m.group(1))))
            continue
        m = re.search(rf"^read, MiB/s:\s*{_NUM}", stripped)
        if m:
            out.append(("DISK_THR_R", float(m.group(1))))
            continue
        m = re.search(rf"^written, MiB/s:\s*{_NUM}", stripped)
        if m:
            out.append(("DISK_THR_W", float(m.group(1))))
            continue
        m = re.search(rf"^avg:\s*{_NUM}", stripped)
        if m:
            metric = {"cpu": "CPU_LAT", "memory": "MEM_LAT", "fileio": "DISK_LAT"}.get(section)
            if metric:
                out.append((metric, float(m.group(1))))
    return out


_NENCH_CPU = {
    "SHA256": "CPU_SHA256",
    "bzip2": "CPU_BZIP2",
    "AES": "CPU_AES",
}
_NENCH_NET = {
    "Cachefly CDN": "NET_1",
    "Leaseweb (NL)": "NET_2",
    "Softlayer DAL (US)": "NET_3",
    "Online.net (FR)": "NET_4",
    "OVH BHS (CA)": "NET_5",
}


def parse_nench(raw: str) -> ParsedValues:
    """CPU timing, ioping/dd disk figures, and the five speedtest lines."""
    out = []
    pending_cpu = None
    pending_disk = None
    for line in raw.splitlines():
        stripped = line.strip()

        m = re.match(r"CPU: (SHA256|bzip2|AES)", stripped)
        if m:
            pending_cpu = _NENCH_CPU[m.group(1)]
            continue
        if pending_cpu:
            m = re.match(rf"{_NUM} seconds", stripped)
            if m:
                out.append((pending_cpu, float(m.group(1))))
            pending_cpu = None
            continue

        if stripped.startswith("ioping: seek rate"):
            pending_disk = "seek"
            continue
        if stripped.startswith("ioping: sequential read speed"):
            pending_disk = "seqread"
            continue
        if pending_disk == "seek":
            m = re.search(rf"min/avg/max/mdev\s*=\s*[^/]+/\s*{_NUM}\s*(us|ms)", stripped)
            if m:
                value = float(m.group(1))
                if m.group(2) == "ms":
                    value *= 1000.0
                out.append(("DISK_SEEK", value))
            pending_disk = None
            continue
        if pending_disk == "seqread":
            m = re.search(rf"{_NUM} MiB/s\s*$", stripped)
            if m:
                out.append(("DISK_SEQ_R", float(m.group(1))))
            pending_disk = None
            continue

        m = re.match(rf"average:\s*{_NUM} MiB/s", stripped)
        if m:
            out.append(("DISK_SEQ_W", float(m.group(1))))
            continue

        for label, metric in _NENCH_NET.items():
            if stripped.startswith(label + ":"):
                m = re.search(rf"{_NUM} MiB/s", stripped)
                if m:
                    out.append((metric, float(m.group(1))))
                break
    return out


def parse_cpubench(raw: str) -> ParsedValues:
    m = re.search(rf"mean duration:\s*{_NUM}\s*s", raw)
    return [("CPU_DUR", float(m.group(1)))] if m else []


def parse_ddbench(raw: str) -> ParsedValues:
    """dd-style copy summaries: small-block run then large-block run."""
    out = []
    section = None
    for line in raw.splitlines():
        stripped = line.strip()
        if stripped.startswith("small block"):
            section = "DISKB_LAT"
            continue
        if stripped.startswith("large block"):
            section = "DISKB_THR"
            continue
        m = re.search(rf"copied,.*?,\s*{_NUM} MB/s", stripped)
        if m and section:
            out.append((section, float(m.group(1))))
            section = None
    return out


def parse_download(raw: str) -> ParsedValues:
    out = []
    for ordinal, metric in ((1, "NETB_1"), (2, "NETB_2")):
        m = re.search(rf"url {ordinal} \([^)]*\):\s*{_NUM} MiB/s", raw)
        if m:
            out.append((metric, float(m.group(1))))
    return out


def parse_webbench(raw: str) -> ParsedValues:
    m = re.search(rf"Requests/sec:\s*{_NUM}", raw)
    return [("APPB", float(m.group(1)))] if m else []


PARSERS: dict[str, Callable[[str], ParsedValues]] = {
    "synthetic": parse_synthetic,
    "sysbench": parse_sysbench,
    "nench": parse_nench,
    "cpubench": parse_cpubench,
    "ddbench": parse_ddbench,
    "download": parse_download,
    "webbench": parse_webbench,
}


def parse_output(raw: str, parser_id: str) -> ParsedValues:
    """Extract (metric, value) pairs from one trial's raw output.

    Values absent from the output are simply omitted; output in which the
    parser recognizes nothing at all is an error.
    """
    parser = PARSERS.get(parser_id)
    if parser is None:
        raise UnparseableOutput(parser_id, "no such parser registered")
    values = parser(raw)
    if not values:
        raise UnparseableOutput(parser_id, "no values recognized")
    return values
