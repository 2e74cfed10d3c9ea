"""perfvar: benchmark-round orchestration and VM performance-variability
analysis."""

__version__ = "0.1.0"

from .catalog import Direction, MetricSpec, VMDescriptor, default_catalog, default_vms
from .data import Measurement, MeasurementSet, Series, VMKey, ingest_csv, to_series
from .variability import EQUAL_WEIGHTS, VIResult, VIWeights, aggregate_vi, vi

__all__ = [
    "Direction",
    "EQUAL_WEIGHTS",
    "Measurement",
    "MeasurementSet",
    "MetricSpec",
    "Series",
    "VIResult",
    "VIWeights",
    "VMDescriptor",
    "VMKey",
    "aggregate_vi",
    "default_catalog",
    "default_vms",
    "ingest_csv",
    "to_series",
    "vi",
    "__version__",
]
