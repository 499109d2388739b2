"""Typed method parameters and the declarative augmentation spec."""
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import field_validator, model_validator
from sqlmodel import Field, SQLModel


class LocalCostEnum(str, Enum):
    SQUARED = "squared"
    ABSOLUTE = "absolute"


class DtwParams(SQLModel):
    """Band and local cost of a DTW alignment.

    ``window_fraction`` is the band half-width as a fraction of the longer
    series; 1 means unconstrained.
    """
    window_fraction: float = Field(default=1.0, ge=0.0, le=1.0)
    local_cost: LocalCostEnum = LocalCostEnum.SQUARED


class TransformDefaults(SQLModel):
    jitter_sigma: float = Field(default=0.03, ge=0.0)
    scale_sigma: float = Field(default=0.1, ge=0.0)
    mag_warp_sigma: float = Field(default=0.2, ge=0.0)
    mag_warp_knots: int = Field(default=4, ge=1)
    time_warp_sigma: float = Field(default=0.2, ge=0.0)
    time_warp_knots: int = Field(default=4, ge=1)
    perm_segments: int = Field(default=4, ge=1)
    random_perm_segments: int = Field(default=4, ge=1)
    slice_ratio: float = Field(default=0.9, gt=0.0, le=1.0)
    window_ratio: float = Field(default=0.1, gt=0.0, lt=1.0)
    window_scales: List[float] = Field(default_factory=lambda: [0.5, 2.0])

    @field_validator("window_scales")
    @classmethod
    def check_scales(cls, value: List[float]) -> List[float]:
        if not value or any(scale <= 0 for scale in value):
            raise ValueError("window_scales must be a non-empty list of positive factors")
        return value


class SfccParams(SQLModel):
    strata: int = Field(default=4, ge=1)


class PatternParams(SQLModel):
    dtw: DtwParams = Field(default_factory=DtwParams)
    desc_window: Optional[int] = Field(default=None, ge=1)
    dgw_batch: int = Field(default=5, ge=1)
    spawner_sigma: float = Field(default=0.05, ge=0.0)
    spawner_window_fraction: float = Field(default=0.1, ge=0.0, le=1.0)
    spawner_max_attempts: int = Field(default=10, ge=1)
    wdba_group_size: int = Field(default=5, ge=1)
    wdba_iterations: int = Field(default=10, ge=0)

    @field_validator("desc_window")
    @classmethod
    def check_odd(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value % 2 == 0:
            raise ValueError("desc_window must be odd")
        return value


class EmdParams(SQLModel):
    k: int = Field(default=2, ge=1)
    max_imfs: int = Field(default=10, ge=1)
    sd_threshold: float = Field(default=0.3, gt=0.0)
    max_sifts: int = Field(default=50, ge=1)


class AugmentParams(SQLModel):
    """Every tunable of every registered method."""
    transform: TransformDefaults = Field(default_factory=TransformDefaults)
    sfcc: SfccParams = Field(default_factory=SfccParams)
    pattern: PatternParams = Field(default_factory=PatternParams)
    emd: EmdParams = Field(default_factory=EmdParams)


class AugmentSpec(SQLModel):
    """Declarative augmentation run, also the JSON run-config document.

    ``dataset`` is the training split path when the spec is read from a file.
    """
    dataset: Optional[str] = None
    method: str
    params: Dict[str, Any] = Field(default_factory=dict)
    factor: int = Field(default=4, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def normalize_method(self):
        self.method = self.method.strip().lower()
        return self
