"""Data models for ldpc-minweight."""

from .entities import (
    BpConfig,
    CalibrationReport,
    ChannelConfig,
    CodewordRecord,
    HistogramBin,
    RunManifest,
    SearchConfig,
    SearchReport,
    TrialRecord,
    WeightSpectrumSlice,
)

__all__ = [
    "BpConfig",
    "CalibrationReport",
    "ChannelConfig",
    "CodewordRecord",
    "HistogramBin",
    "RunManifest",
    "SearchConfig",
    "SearchReport",
    "TrialRecord",
    "WeightSpectrumSlice",
]
