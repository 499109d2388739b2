"""Dynamic time warping: banded distance, optimal path, shapeDTW and an oracle.

The dynamic programming runs in numba-compiled kernels released from the GIL,
so thread pools over pairs scale. Band: cells with ``|i - j| <= w`` where
``w = ceil(window_fraction * max(n, m))`` widened to at least ``|n - m|``.
Backtracking prefers the diagonal step, then the vertical (i - 1) step, then
the horizontal (j - 1) step.
"""
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numba as nb
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.spatial.distance import cdist

from ..exceptions import OracleSizeError
from ..models import DtwParams, LocalCostEnum, TimeSeries

ORACLE_MAX_LENGTH = 8

jitkw = {"nopython": True, "nogil": True, "cache": True}


@dataclass(frozen=True)
class WarpPath:
    """Monotone alignment as a (k, 2) array of (i, j) index pairs."""
    pairs: np.ndarray

    def __len__(self) -> int:
        return int(self.pairs.shape[0])

    @property
    def i(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def j(self) -> np.ndarray:
        return self.pairs[:, 1]

    def as_list(self) -> List[Tuple[int, int]]:
        return [(int(a), int(b)) for a, b in self.pairs]


class DtwResult(NamedTuple):
    distance: float
    path: WarpPath


@nb.jit(**jitkw)
def _accumulate(cost, band):
    n, m = cost.shape
    acc = np.full((n, m), np.inf)
    for i in range(n):
        lo = max(0, i - band)
        hi = min(m - 1, i + band)
        for j in range(lo, hi + 1):
            if i == 0 and j == 0:
                acc[i, j] = cost[i, j]
                continue
            best = np.inf
            if i > 0 and j > 0:
                best = acc[i - 1, j - 1]
            if i > 0 and acc[i - 1, j] < best:
                best = acc[i - 1, j]
            if j > 0 and acc[i, j - 1] < best:
                best = acc[i, j - 1]
            acc[i, j] = cost[i, j] + best
    return acc


@nb.jit(**jitkw)
def _backtrack(acc):
    n, m = acc.shape
    path = np.empty((n + m - 1, 2), dtype=np.int64)
    i = n - 1
    j = m - 1
    k = 0
    path[0, 0] = i
    path[0, 1] = j
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag = acc[i - 1, j - 1]
            up = acc[i - 1, j]
            left = acc[i, j - 1]
            if diag <= up and diag <= left:
                i -= 1
                j -= 1
            elif up <= left:
                i -= 1
            else:
                j -= 1
        k += 1
        path[k, 0] = i
        path[k, 1] = j
    return path[:k + 1][::-1].copy()


@nb.jit(**jitkw)
def _banded_distance(x, y, band, absolute, cutoff):
    """Two-row DTW distance; returns inf once every cell of a row exceeds cutoff."""
    n = x.shape[0]
    m = y.shape[0]
    prev = np.full(m, np.inf)
    curr = np.full(m, np.inf)
    for i in range(n):
        curr[:] = np.inf
        lo = max(0, i - band)
        hi = min(m - 1, i + band)
        row_min = np.inf
        for j in range(lo, hi + 1):
            d = x[i] - y[j]
            c = abs(d) if absolute else d * d
            if i == 0 and j == 0:
                best = 0.0
            else:
                best = np.inf
                if i > 0 and j > 0:
                    best = prev[j - 1]
                if i > 0 and prev[j] < best:
                    best = prev[j]
                if j > 0 and curr[j - 1] < best:
                    best = curr[j - 1]
            curr[j] = c + best
            if curr[j] < row_min:
                row_min = curr[j]
        if row_min > cutoff:
            return np.inf
        prev, curr = curr, prev
    return prev[m - 1]


@nb.jit(**jitkw)
def _band_for(n, m, window_fraction):
    band = int(math.ceil(window_fraction * max(n, m)))
    return max(band, abs(n - m))


@nb.jit(**jitkw)
def _nearest(query, bank, lengths, window_fraction, absolute):
    """Index of the nearest bank row (lowest index on ties) and its distance."""
    best = np.inf
    best_index = -1
    n = query.shape[0]
    for k in range(bank.shape[0]):
        m = lengths[k]
        band = _band_for(n, m, window_fraction)
        d = _banded_distance(query, bank[k, :m], band, absolute, best)
        if d < best:
            best = d
            best_index = k
    return best_index, best


def band_width(n: int, m: int, window_fraction: float) -> int:
    return int(_band_for(n, m, float(window_fraction)))


def local_cost_matrix(x: TimeSeries, y: TimeSeries,
                      local_cost: LocalCostEnum = LocalCostEnum.SQUARED) -> np.ndarray:
    diff = np.asarray(x, dtype=np.float64)[:, None] - np.asarray(y, dtype=np.float64)[None, :]
    if LocalCostEnum(local_cost) == LocalCostEnum.ABSOLUTE:
        return np.abs(diff)
    return diff * diff


def dtw_from_cost(cost: np.ndarray, window_fraction: float = 1.0, band: Optional[int] = None) -> DtwResult:
    """Optimal path over ``cost``; an explicit ``band`` in cells overrides the fraction."""
    n, m = cost.shape
    if band is None:
        band = band_width(n, m, window_fraction)
    else:
        band = max(int(band), abs(n - m))
    acc = _accumulate(np.ascontiguousarray(cost, dtype=np.float64), band)
    return DtwResult(distance=float(acc[-1, -1]), path=WarpPath(pairs=_backtrack(acc)))


def dtw(x: TimeSeries, y: TimeSeries, params: DtwParams = DtwParams()) -> DtwResult:
    """Minimal-cost admissible alignment of ``x`` (i) onto ``y`` (j)."""
    if len(x) < 1 or len(y) < 1:
        raise ValueError("dtw needs non-empty series")
    return dtw_from_cost(local_cost_matrix(x, y, params.local_cost), params.window_fraction)


def dtw_distance(x: TimeSeries, y: TimeSeries, params: DtwParams = DtwParams()) -> float:
    """Distance only, without storing the accumulated matrix."""
    xa = np.ascontiguousarray(x, dtype=np.float64)
    ya = np.ascontiguousarray(y, dtype=np.float64)
    band = band_width(len(xa), len(ya), params.window_fraction)
    absolute = LocalCostEnum(params.local_cost) == LocalCostEnum.ABSOLUTE
    return float(_banded_distance(xa, ya, band, absolute, np.inf))


def nearest_neighbor(query: TimeSeries, bank: np.ndarray, lengths: np.ndarray,
                     params: DtwParams) -> Tuple[int, float]:
    """Nearest row of a NaN-padded bank under banded DTW."""
    absolute = LocalCostEnum(params.local_cost) == LocalCostEnum.ABSOLUTE
    index, distance = _nearest(np.ascontiguousarray(query, dtype=np.float64), bank,
                               lengths, float(params.window_fraction), absolute)
    return int(index), float(distance)


def dtw_bruteforce(x: TimeSeries, y: TimeSeries, params: DtwParams = DtwParams()) -> float:
    """Exact minimum over every enumerated monotone path inside the band."""
    n, m = len(x), len(y)
    if n > ORACLE_MAX_LENGTH or m > ORACLE_MAX_LENGTH:
        raise OracleSizeError(f"oracle supports lengths <= {ORACLE_MAX_LENGTH}, got {n}x{m}")
    cost = local_cost_matrix(x, y, params.local_cost)
    band = band_width(n, m, params.window_fraction)
    best = math.inf

    def walk(i: int, j: int, total: float) -> None:
        nonlocal best
        total += cost[i, j]
        if i == n - 1 and j == m - 1:
            best = min(best, total)
            return
        for di, dj in ((1, 1), (1, 0), (0, 1)):
            a, b = i + di, j + dj
            if a < n and b < m and abs(a - b) <= band:
                walk(a, b, total)

    walk(0, 0, 0.0)
    return float(best)


def default_desc_window(n: int) -> int:
    window = max(3, int(round(0.1 * n)))
    return window if window % 2 == 1 else window + 1


def shape_descriptors(x: TimeSeries, desc_window: int) -> np.ndarray:
    """Raw-subsequence descriptor per sample, edge-replicated at the borders."""
    if desc_window < 1 or desc_window % 2 == 0:
        raise ValueError("desc_window must be a positive odd number")
    half = desc_window // 2
    padded = np.pad(np.asarray(x, dtype=np.float64), half, mode="edge")
    return sliding_window_view(padded, desc_window)


def shape_dtw(x: TimeSeries, y: TimeSeries, desc_window: int,
              params: DtwParams = DtwParams()) -> DtwResult:
    cost = cdist(shape_descriptors(x, desc_window), shape_descriptors(y, desc_window), "sqeuclidean")
    return dtw_from_cost(cost, params.window_fraction)
