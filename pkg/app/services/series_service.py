"""UCR ingestion, the [-1, 1] normalization protocol and resampling primitives.

Reader rules:
- one record per line, label first, tab separated; comma or whitespace
  separated rows are accepted as fallbacks
- ``NaN`` tokens and empty fields are missing samples; they survive parsing
  as NaN and become 0 in sanitize, so a fixed-length file keeps its width
- trailing missing samples are dropped only for variable-length datasets
  (catalog length "Vary", or ``variable_length=True``)
"""
import logging
import math
import os
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from ..exceptions import DatasetFormatError
from ..models import (
    Dataset, LabeledSeries, NormalizationParams, SplitEnum, TimeSeries, as_series, label_sort_key
)
from .catalog_service import lookup
from .random_service import RandomStream

logger = logging.getLogger(__name__)

MISSING_TOKENS = {"", "nan", "na", "?"}
PathLike = Union[str, os.PathLike]
_SPLIT_SUFFIX = re.compile(r"_(TRAIN|TEST)$", re.IGNORECASE)


def dataset_name_from_path(path: PathLike) -> str:
    """``ECG5000_TRAIN.tsv`` -> ``ECG5000``."""
    return _SPLIT_SUFFIX.sub("", Path(path).stem)


def _split_fields(line: str) -> List[str]:
    if "\t" in line:
        return line.split("\t")
    if "," in line:
        return line.split(",")
    return line.split()


def _parse_row(fields: List[str], line_no: int, path: PathLike) -> Tuple[str, np.ndarray]:
    label = fields[0].strip()
    if not label:
        raise DatasetFormatError(f"{path}:{line_no}: missing class label")
    values = []
    for token in fields[1:]:
        token = token.strip()
        if token.lower() in MISSING_TOKENS:
            values.append(math.nan)
            continue
        try:
            values.append(float(token))
        except ValueError:
            raise DatasetFormatError(f"{path}:{line_no}: non-numeric value '{token}'") from None
    if not values:
        raise DatasetFormatError(f"{path}:{line_no}: row has no samples")
    return label, np.array(values, dtype=np.float64)


def _strip_padding(arr: np.ndarray, line_no: int, path: PathLike) -> np.ndarray:
    """Drop the trailing NaNs that pad a variable-length row to the file width."""
    finite = np.flatnonzero(~np.isnan(arr))
    if finite.size == 0:
        raise DatasetFormatError(f"{path}:{line_no}: padded row has no samples")
    return arr[:finite[-1] + 1]


def load_ucr_tsv(path: PathLike, split: SplitEnum = SplitEnum.TRAIN,
                 name: Optional[str] = None, variable_length: Optional[bool] = None) -> Dataset:
    """Read one UCR split file into a Dataset (values are not sanitized)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetFormatError(f"cannot read {path}: {exc}") from exc
    return parse_ucr_text(text, name or dataset_name_from_path(path), split, source=path,
                          variable_length=variable_length)


def parse_ucr_text(text: str, name: str, split: SplitEnum = SplitEnum.TRAIN,
                   source: PathLike = "<text>", variable_length: Optional[bool] = None) -> Dataset:
    """
    Parse UCR rows. Missing tokens stay NaN samples (sanitize maps them to 0),
    so fixed-length files keep their width. Only variable-length datasets
    treat trailing NaNs as padding; by default that is decided by the archive
    catalog (entries of length "Vary").
    """
    if variable_length is None:
        entry = lookup(name)
        variable_length = entry is not None and entry.length is None
    items = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        label, values = _parse_row(_split_fields(line.strip()), line_no, source)
        if variable_length:
            values = _strip_padding(values, line_no, source)
        items.append(LabeledSeries(series=as_series(values), label=label))

    if not items:
        raise DatasetFormatError(f"{source}: file contains no records")
    dataset = Dataset.from_items(name, SplitEnum(split), items)
    logger.debug("Loaded %s (%s): %d items, %d classes",
                 dataset.name, dataset.split.value, len(dataset), len(dataset.classes))
    return dataset


def format_value(value: float) -> str:
    return format(float(value), ".17g")


def format_ucr_text(dataset: Dataset) -> str:
    return "".join(
        "\t".join([item.label] + [format_value(v) for v in item.series]) + "\n"
        for item in dataset.items
    )


def write_ucr_tsv(dataset: Dataset, path: PathLike) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(format_ucr_text(dataset))
    except OSError as exc:
        raise DatasetFormatError(f"cannot write {path}: {exc}") from exc


def sanitize(series: Iterable[float]) -> TimeSeries:
    """Replace missing / non-finite samples with 0."""
    arr = np.asarray(series, dtype=np.float64)
    return as_series(np.where(np.isfinite(arr), arr, 0.0))


def sanitize_dataset(dataset: Dataset) -> Dataset:
    return dataset.with_items(
        [LabeledSeries(series=sanitize(item.series), label=item.label) for item in dataset.items]
    )


def fit_normalizer(train: Dataset) -> NormalizationParams:
    pooled = np.concatenate([item.series for item in train.items])
    return NormalizationParams(train_min=float(np.min(pooled)), train_max=float(np.max(pooled)))


def apply_normalizer(series: TimeSeries, params: NormalizationParams) -> TimeSeries:
    """Affine map sending the training extrema to -1 and +1."""
    arr = np.asarray(series, dtype=np.float64)
    span = params.train_max - params.train_min
    if span == 0:
        return as_series(np.zeros_like(arr))
    return as_series(2.0 * (arr - params.train_min) / span - 1.0)


def normalize_dataset(dataset: Dataset, params: NormalizationParams) -> Dataset:
    return dataset.with_items(
        [LabeledSeries(series=apply_normalizer(item.series, params), label=item.label)
         for item in dataset.items]
    )


def normalize_splits(train: Dataset, test: Optional[Dataset] = None
                     ) -> Tuple[Dataset, Optional[Dataset], NormalizationParams]:
    """Sanitize both splits, fit on train, rescale both."""
    train = sanitize_dataset(train)
    params = fit_normalizer(train)
    norm_test = normalize_dataset(sanitize_dataset(test), params) if test is not None else None
    return normalize_dataset(train, params), norm_test, params


def linear_resample(series: TimeSeries, m: int) -> TimeSeries:
    """Piecewise-linear resampling to ``m`` evenly spaced points over [0, n-1]."""
    if m < 1:
        raise ValueError("target length must be >= 1")
    arr = np.asarray(series, dtype=np.float64)
    n = arr.shape[0]
    if n == 0:
        raise ValueError("cannot resample an empty series")
    if m == n:
        return as_series(arr)
    if n == 1:
        return as_series(np.full(m, arr[0]))
    positions = np.linspace(0.0, n - 1.0, num=m)
    return as_series(np.interp(positions, np.arange(n), arr))


def smooth_random_curve(n: int, knots: int, sigma: float, stream: RandomStream) -> TimeSeries:
    """Natural cubic spline through ``knots + 2`` Normal(1, sigma) anchors."""
    if n < 2:
        raise ValueError("smooth curves need n >= 2")
    if knots < 1 or sigma < 0:
        raise ValueError("knots must be >= 1 and sigma >= 0")
    anchors = np.linspace(0.0, n - 1.0, num=knots + 2)
    values = stream.normal(1.0, sigma, size=knots + 2)
    if sigma == 0:
        return as_series(np.ones(n))
    curve = CubicSpline(anchors, values, bc_type="natural")(np.arange(n))
    return as_series(curve)


def dataset_summary(dataset: Dataset) -> Dict[str, object]:
    lengths = dataset.lengths
    return {
        "name": dataset.name,
        "split": dataset.split.value,
        "items": len(dataset),
        "classes": len(dataset.classes),
        "length": dataset.fixed_length if dataset.fixed_length is not None else "variable",
        "min_length": min(lengths),
        "max_length": max(lengths),
        "class_histogram": {label: count for label, count in sorted(
            dataset.class_counts().items(), key=lambda kv: label_sort_key(kv[0]))},
    }
