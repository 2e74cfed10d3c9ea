"""Exception types shared across the toolkit."""

from __future__ import annotations


class PerfvarError(Exception):
    """Base class for all toolkit errors."""


# --- ingestion / selection

class MalformedRow(PerfvarError):
    def __init__(self, line: int, detail: str = ""):
        self.line = line
        super().__init__(f"malformed row at line {line}" + (f": {detail}" if detail else ""))


class UnknownMetric(PerfvarError):
    def __init__(self, metric_id: str, line: int | None = None):
        self.metric_id = metric_id
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"unknown metric id {metric_id!r}{where}")


class NonFiniteValue(PerfvarError):
    def __init__(self, line: int | None = None, detail: str = ""):
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"non-finite value{where}" + (f": {detail}" if detail else ""))


class EmptySelection(PerfvarError):
    pass


# --- series statistics

class ZeroMean(PerfvarError):
    pass


class TooShort(PerfvarError):
    pass


class EmptyGroup(PerfvarError):
    pass


# --- harness

class LifecycleHookFailed(PerfvarError):
    def __init__(self, hook: str, detail: str = ""):
        self.hook = hook
        super().__init__(f"lifecycle hook {hook!r} failed" + (f": {detail}" if detail else ""))


class ProbeFailed(PerfvarError):
    pass


class UnparseableOutput(PerfvarError):
    def __init__(self, parser_id: str, detail: str = ""):
        self.parser_id = parser_id
        super().__init__(f"parser {parser_id!r}: unparseable output" + (f" ({detail})" if detail else ""))


class StoreCorrupt(PerfvarError):
    def __init__(self, offset: int, detail: str = ""):
        self.offset = offset
        super().__init__(f"store corrupt at byte offset {offset}" + (f": {detail}" if detail else ""))


# --- analysis

class InsufficientOverlap(PerfvarError):
    def __init__(self, pair: tuple[str, str], count: int):
        self.pair = pair
        self.count = count
        super().__init__(f"metrics {pair[0]}/{pair[1]} share only {count} rounds")


class NonPositivePerformance(PerfvarError):
    pass


# --- forecasting

class DegenerateRange(PerfvarError):
    pass


class NonConvergence(PerfvarError):
    def __init__(self, iterations: int):
        self.iterations = iterations
        super().__init__(f"optimizer did not converge within {iterations} iterations")


class Singular(PerfvarError):
    pass


class LengthMismatch(PerfvarError):
    pass


class ZeroDenominator(PerfvarError):
    pass


# --- classification

class ClassTooSmall(PerfvarError):
    def __init__(self, label: str, count: int, required: int):
        self.label = label
        self.count = count
        self.required = required
        super().__init__(f"class {label!r} has {count} members, needs {required}")


class ConvergenceWarning(UserWarning):
    """Training hit its iteration budget before the gradient settled."""
