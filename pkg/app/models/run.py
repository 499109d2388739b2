"""Augmentation run provenance: per-sample RunLog records and run metadata."""
from typing import Any, Dict, List, Optional

from sqlmodel import Field, SQLModel

from .series import NormalizationParams


class RunLogRecord(SQLModel):
    """Provenance of one generated sample."""
    sample_index: int
    copy_index: int
    method: str
    lane: List[Any]
    fallbacks: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)


class RunLog(SQLModel):
    records: List[RunLogRecord] = Field(default_factory=list)

    def to_jsonl(self) -> str:
        return "".join(record.model_dump_json() + "\n" for record in self.records)

    @property
    def fallback_count(self) -> int:
        return sum(1 for record in self.records if record.fallbacks)


class RunMeta(SQLModel):
    """Self-description written next to every augmented dataset."""
    dataset: str
    method: str
    seed: int
    factor: int
    params: Dict[str, Any]
    normalization: Optional[NormalizationParams] = None
    originals_preserved: bool = True
    items_in: int
    items_out: int
