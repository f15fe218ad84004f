"""Configuration and report models for minimum-weight codeword searches."""

from datetime import datetime, timezone
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

PatternCheck = Literal["all", "sample", "off"]


class ChannelConfig(BaseModel):
    """AWGN channel driven by BPSK-mapped all-zero codewords."""

    sigma: float = Field(gt=0.0, description="Noise standard deviation (linear, not dB)")
    seed: int = Field(default=0, ge=0, lt=2**64, description="64-bit RNG seed")


class BpConfig(BaseModel):
    """Sum-product decoder settings."""

    max_iterations: int = Field(default=5, ge=0, description="I_m")
    llr_clip: float = Field(default=50.0, gt=0.0, description="Saturation magnitude")
    early_stop_on_zero_syndrome: bool = True


class SearchConfig(BaseModel):
    """Full parameter set of one search run."""

    order_p: int = Field(default=2, ge=0)
    l_c: int = Field(default=100, ge=1, description="Number of transmitted codewords")
    channel: ChannelConfig
    bp: BpConfig = Field(default_factory=BpConfig)
    alpha: float = Field(default=1.0, gt=0.0, le=1.0)
    keep_top: int = Field(default=1024, ge=1)
    report_every: int = Field(default=0, ge=0)
    all_pairs_top: Optional[int] = Field(
        default=None, ge=2, description="XOR all pairs among the lightest T patterns"
    )
    threads: int = Field(default=1, ge=1)
    pattern_check: PatternCheck = "sample"
    pattern_sample_rate: float = Field(default=0.01, gt=0.0, le=1.0)


class TrialRecord(BaseModel):
    """One row of the per-trial progress table."""

    trial: int
    iterations_run: int
    syndrome_weight: int
    pattern_count: int
    harvested_weight: Optional[int] = None
    harvested_count: int = 0
    best_weight: Optional[int] = None
    multiplicity: int = 0
    elapsed_seconds: float = 0.0


class CodewordRecord(BaseModel):
    """A codeword in original coordinates, hex-encoded (bit 0 is the MSB)."""

    hex: str
    length: int
    weight: int
    found_at_trial: int


class SearchReport(BaseModel):
    """Outcome of a search over ``l_c`` trials."""

    kind: Literal["search"] = "search"
    config: SearchConfig
    n: int
    m: int
    rank: int
    dimension: int
    best_weight: Optional[int] = None
    multiplicity: int = 0
    truncated: bool = False
    witnesses: list[CodewordRecord] = Field(default_factory=list)
    earliest_best_trial: Optional[int] = Field(
        default=None, description="Trial at which the final best weight was first seen"
    )
    complete_multiplicity_trial: Optional[int] = Field(
        default=None, description="Trial at which the last witness of the final weight appeared"
    )
    trials: list[TrialRecord] = Field(default_factory=list)
    wall_seconds: float = 0.0


class HistogramBin(BaseModel):
    iteration: int
    count: int


class CalibrationReport(BaseModel):
    """Recommended I_m from observed LLR saturation."""

    kind: Literal["calibration"] = "calibration"
    sigma: float
    trials: int
    seed: int
    max_iterations: int
    llr_clip: float
    recommended_iterations: int
    saturated: bool
    saturation_iterations: list[Optional[int]] = Field(default_factory=list)
    histogram: list[HistogramBin] = Field(default_factory=list)
    low_confidence: bool = False
    warning: Optional[str] = None


class WeightSpectrumSlice(BaseModel):
    """Exact minimum-weight stratum of a small code."""

    kind: Literal["spectrum"] = "spectrum"
    n: int
    dimension: int
    d_min: Optional[int] = None
    multiplicity: int = 0
    witnesses: list[str] = Field(default_factory=list)
    witnesses_capped: bool = False

    @model_validator(mode="after")
    def _check_witness_count(self) -> "WeightSpectrumSlice":
        if len(self.witnesses) > self.multiplicity:
            raise ValueError("More witnesses than the multiplicity allows")
        return self


RunResult = Union[SearchReport, CalibrationReport, WeightSpectrumSlice]


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class RunManifest(BaseModel):
    """Everything needed to reproduce and read back one CLI run."""

    command: Literal["search", "calibrate", "oracle"]
    code_path: str
    tool_version: str
    config: Optional[SearchConfig] = None
    started_at: datetime = Field(default_factory=_utcnow)
    finished_at: Optional[datetime] = None
    result: RunResult = Field(discriminator="kind")

    @field_validator("code_path")
    @classmethod
    def _non_empty(cls, value: str) -> str:
        if not value:
            raise ValueError("code_path must not be empty")
        return value
