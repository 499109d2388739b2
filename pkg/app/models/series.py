"""Series, dataset and normalization types.

A time series is a read-only 1-D ``float64`` numpy array. Datasets hold
labeled series together with their class inventory and length metadata.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import model_validator
from sqlmodel import SQLModel

TimeSeries = np.ndarray


def as_series(values: Iterable[float]) -> TimeSeries:
    """Copy ``values`` into a read-only float64 series of length >= 1."""
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise ValueError("a time series needs at least one sample")
    arr.setflags(write=False)
    return arr


def label_sort_key(label: str) -> Tuple[int, float, str]:
    """Numeric labels sort numerically, everything else lexically after them."""
    try:
        return (0, float(label), label)
    except ValueError:
        return (1, 0.0, label)


class SplitEnum(str, Enum):
    TRAIN = "train"
    TEST = "test"


@dataclass(frozen=True)
class LabeledSeries:
    series: TimeSeries
    label: str

    def __len__(self) -> int:
        return int(self.series.shape[0])


@dataclass(frozen=True)
class Dataset:
    """A named train or test split of labeled series."""
    name: str
    split: SplitEnum
    items: Tuple[LabeledSeries, ...]
    classes: Tuple[str, ...]
    fixed_length: Optional[int] = None

    def __post_init__(self):
        if not self.items:
            raise ValueError(f"dataset '{self.name}' has no items")
        known = set(self.classes)
        for item in self.items:
            if item.label not in known:
                raise ValueError(f"label '{item.label}' is not in the class set of '{self.name}'")
        if self.fixed_length is not None:
            if any(len(item) != self.fixed_length for item in self.items):
                raise ValueError(f"dataset '{self.name}' declares length {self.fixed_length} "
                                 "but holds series of other lengths")

    @classmethod
    def from_items(cls, name: str, split: SplitEnum, items: Sequence[LabeledSeries]) -> "Dataset":
        items = tuple(items)
        classes = tuple(sorted({item.label for item in items}, key=label_sort_key))
        lengths = {len(item) for item in items}
        fixed_length = lengths.pop() if len(lengths) == 1 else None
        return cls(name=name, split=split, items=items, classes=classes, fixed_length=fixed_length)

    def with_items(self, items: Sequence[LabeledSeries]) -> "Dataset":
        return Dataset.from_items(self.name, self.split, items)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def labels(self) -> List[str]:
        return [item.label for item in self.items]

    @property
    def lengths(self) -> List[int]:
        return [len(item) for item in self.items]

    def class_counts(self) -> Dict[str, int]:
        counts = {label: 0 for label in self.classes}
        for item in self.items:
            counts[item.label] += 1
        return counts


class NormalizationParams(SQLModel):
    """Global training-split extrema used by the [-1, 1] rescale."""
    train_min: float
    train_max: float

    @model_validator(mode="after")
    def check_order(self):
        if self.train_min > self.train_max:
            raise ValueError("train_min must not exceed train_max")
        return self


class ArchiveEntry(SQLModel):
    """Reference metadata of an archive dataset used in the evaluation."""
    name: str
    type: str
    train_size: int
    test_size: int
    classes: int
    length: Optional[int] = None  # None marks variable-length sets
