"""Empirical mode decomposition by sifting, and IMF-recombination augmentation."""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from ..models import EmdParams, TimeSeries, as_series

logger = logging.getLogger(__name__)

MIRROR_POINTS = 2


@dataclass(frozen=True)
class ImfSet:
    """IMFs ordered from the highest frequency, plus the residual trend."""
    imfs: Tuple[TimeSeries, ...]
    residual: TimeSeries

    def reconstruct(self) -> np.ndarray:
        return np.sum(self.imfs, axis=0) + self.residual if self.imfs else np.array(self.residual)


def find_extrema(x: TimeSeries) -> Tuple[np.ndarray, np.ndarray]:
    """Interior strict local maxima and minima; a plateau counts once at its midpoint."""
    arr = np.asarray(x, dtype=np.float64)
    empty = np.array([], dtype=np.int64)
    if arr.shape[0] < 3:
        return empty, empty
    starts = np.flatnonzero(np.concatenate(([True], arr[1:] != arr[:-1])))
    ends = np.concatenate((starts[1:] - 1, [arr.shape[0] - 1]))
    values = arr[starts]
    if values.shape[0] < 3:
        return empty, empty
    left, mid, right = values[:-2], values[1:-1], values[2:]
    centers = (starts[1:-1] + ends[1:-1]) // 2
    return centers[(mid > left) & (mid > right)], centers[(mid < left) & (mid < right)]


def zero_crossings(x: TimeSeries) -> int:
    arr = np.asarray(x, dtype=np.float64)
    signs = np.sign(arr[arr != 0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def is_imf(x: TimeSeries) -> bool:
    maxima, minima = find_extrema(x)
    return abs(len(maxima) + len(minima) - zero_crossings(x)) <= 1


def _envelope(x: np.ndarray, extrema: np.ndarray) -> np.ndarray:
    """Natural spline through the extrema mirrored about both ends."""
    last = x.shape[0] - 1
    left = extrema[:MIRROR_POINTS][::-1]
    right = extrema[-MIRROR_POINTS:][::-1]
    positions = np.concatenate((-left, extrema, 2 * last - right))
    values = np.concatenate((x[left], x[extrema], x[right]))
    return CubicSpline(positions, values, bc_type="natural")(np.arange(x.shape[0]))


def _has_envelopes(x: np.ndarray) -> bool:
    maxima, minima = find_extrema(x)
    return len(maxima) >= 2 and len(minima) >= 2


def _sift(residual: np.ndarray, sd_threshold: float, max_sifts: int) -> np.ndarray:
    proto = residual.copy()
    for _ in range(max_sifts):
        maxima, minima = find_extrema(proto)
        if len(maxima) < 2 or len(minima) < 2:
            break
        mean = 0.5 * (_envelope(proto, maxima) + _envelope(proto, minima))
        updated = proto - mean
        energy = float(np.sum(proto * proto))
        sd = float(np.sum(mean * mean)) / energy if energy > 0 else 0.0
        proto = updated
        if sd < sd_threshold and is_imf(proto):
            break
    else:
        if not is_imf(proto):
            logger.debug("Sifting hit the %d-sift cap before meeting the IMF condition", max_sifts)
    return proto


def emd(x: TimeSeries, max_imfs: int = 10, sd_threshold: float = 0.3, max_sifts: int = 50) -> ImfSet:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape[0] < 4:
        raise ValueError("EMD needs series of length >= 4")
    residual = arr.copy()
    imfs = []
    while len(imfs) < max_imfs and _has_envelopes(residual):
        imf = _sift(residual, sd_threshold, max_sifts)
        imfs.append(as_series(imf))
        residual = residual - imf
    imf_set = ImfSet(imfs=tuple(imfs), residual=as_series(residual))
    violations = imf_ordering_violations(imf_set)
    if violations:
        logger.info("EMD zero-crossing ordering violated %d time(s)", violations)
    return imf_set


def imf_ordering_violations(imf_set: ImfSet) -> int:
    """Number of IMFs with more zero crossings than their predecessor."""
    counts = [zero_crossings(imf) for imf in imf_set.imfs]
    return sum(1 for a, b in zip(counts, counts[1:]) if b > a)


def leading_imfs(imf_set: ImfSet, k: int, fallback: TimeSeries) -> TimeSeries:
    """Sum of the first ``min(k, available)`` IMFs; ``fallback`` when there are none."""
    if not imf_set.imfs:
        return as_series(fallback)
    return as_series(np.sum(imf_set.imfs[:k], axis=0))


def emd_augment(x: TimeSeries, params: EmdParams = EmdParams()) -> TimeSeries:
    imf_set = emd(x, params.max_imfs, params.sd_threshold, params.max_sifts)
    return leading_imfs(imf_set, params.k, x)
