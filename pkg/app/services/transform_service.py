"""Transformation-based augmenters operating on a single series.

Magnitude branch: jitter, rotation (sign flip), scaling, magnitude warping.
Time branch: permutation, random permutation, time warping, window slicing,
window warping. All functions return a new series of the input length.
"""
import math
from typing import Sequence

import numpy as np

from ..models import TimeSeries, as_series
from .random_service import RandomStream
from .series_service import linear_resample, smooth_random_curve

MIN_SPEED = 1e-3


def jitter(x: TimeSeries, sigma: float, stream: RandomStream) -> TimeSeries:
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0:
        return as_series(x)
    return as_series(x + stream.normal(0.0, sigma, size=len(x)))


def flip_rotation(x: TimeSeries) -> TimeSeries:
    return as_series(-np.asarray(x, dtype=np.float64))


def scaling(x: TimeSeries, sigma: float, stream: RandomStream) -> TimeSeries:
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    factor = stream.normal(1.0, sigma)
    if sigma == 0:
        return as_series(x)
    return as_series(factor * np.asarray(x))


def magnitude_warp(x: TimeSeries, sigma: float, knots: int, stream: RandomStream) -> TimeSeries:
    curve = smooth_random_curve(len(x), knots, sigma, stream)
    return as_series(np.asarray(x) * curve)


def _check_segments(n: int, segments: int) -> None:
    if segments < 1:
        raise ValueError("segments must be >= 1")
    if segments > n:
        raise ValueError(f"cannot split a series of length {n} into {segments} segments")


def _emit_blocks(x: np.ndarray, bounds: Sequence[int], order: Sequence[int]) -> TimeSeries:
    blocks = [x[bounds[k]:bounds[k + 1]] for k in range(len(bounds) - 1)]
    return as_series(np.concatenate([blocks[k] for k in order]))


def permutation(x: TimeSeries, segments: int, stream: RandomStream) -> TimeSeries:
    """Equal blocks (remainder joins the last block) in random order."""
    arr = np.asarray(x)
    n = arr.shape[0]
    _check_segments(n, segments)
    if segments == 1:
        return as_series(arr)
    size = n // segments
    bounds = [k * size for k in range(segments)] + [n]
    return _emit_blocks(arr, bounds, stream.permutation(segments))


def random_permutation(x: TimeSeries, segments: int, stream: RandomStream) -> TimeSeries:
    """Blocks cut at ``segments - 1`` distinct random split points, shuffled."""
    arr = np.asarray(x)
    n = arr.shape[0]
    _check_segments(n, segments)
    if segments == 1:
        return as_series(arr)
    splits = np.sort(stream.choice(np.arange(1, n), size=segments - 1, replace=False))
    bounds = [0] + [int(s) for s in splits] + [n]
    return _emit_blocks(arr, bounds, stream.permutation(segments))


def time_warp(x: TimeSeries, sigma: float, knots: int, stream: RandomStream) -> TimeSeries:
    """Resample along timestamps integrated from a smooth random speed curve."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    arr = np.asarray(x, dtype=np.float64)
    n = arr.shape[0]
    speed = np.maximum(np.asarray(smooth_random_curve(n, knots, sigma, stream)), MIN_SPEED)
    if sigma == 0:
        return as_series(arr)
    stamps = np.cumsum(speed) - speed[0]
    stamps *= (n - 1) / stamps[-1]
    stamps[-1] = n - 1.0
    return as_series(np.interp(np.arange(n), stamps, arr))


def window_slice(x: TimeSeries, slice_ratio: float, stream: RandomStream) -> TimeSeries:
    arr = np.asarray(x, dtype=np.float64)
    n = arr.shape[0]
    width = math.ceil(slice_ratio * n)
    if width < 2 or slice_ratio > 1:
        raise ValueError(f"slice ratio {slice_ratio} gives a degenerate window on length {n}")
    start = int(stream.integers(0, n - width + 1))
    return linear_resample(arr[start:start + width], n)


def window_warp(x: TimeSeries, window_ratio: float, scales: Sequence[float],
                stream: RandomStream) -> TimeSeries:
    """Stretch or squeeze one random window, then resample back to n."""
    arr = np.asarray(x, dtype=np.float64)
    n = arr.shape[0]
    width = math.ceil(window_ratio * n)
    if width < 2 or width > n:
        raise ValueError(f"window ratio {window_ratio} gives a degenerate window on length {n}")
    scale = float(stream.choice(list(scales)))
    start = int(stream.integers(0, n - width + 1))
    warped_width = max(2, int(round(width * scale)))
    window = linear_resample(arr[start:start + width], warped_width)
    spliced = np.concatenate((arr[:start], window, arr[start + width:]))
    return linear_resample(spliced, n)
