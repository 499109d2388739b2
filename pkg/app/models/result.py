"""Evaluation results, ranking rows and the stored result table."""
from enum import Enum
from typing import Dict, Optional

from sqlmodel import Field, SQLModel

from .base import TimestampMixin


class EvalResult(SQLModel):
    """Accuracy of one method on one dataset."""
    dataset: str = Field(index=True)
    method: str = Field(index=True)
    accuracy: float = Field(ge=0.0, le=1.0)
    runtime: float = Field(default=0.0, ge=0.0)


class EvalRecord(EvalResult, TimestampMixin, table=True):
    """Persisted EvalResult with the run context that produced it."""
    id: Optional[int] = Field(default=None, primary_key=True)
    run_id: str = Field(index=True)
    classifier: str
    seed: int
    factor: int


class RankEntry(SQLModel):
    method: str
    category: str
    ranks: Dict[str, float]
    average_rank: float
    best_count: int = 0


class MethodSummary(SQLModel):
    """Mean and population std of a method's accuracy over datasets."""
    method: str
    mean_accuracy: float
    std_accuracy: float
    average_rank: float


class ClassifierEnum(str, Enum):
    EUCLIDEAN = "euclidean"
    DTW = "dtw"
