"""Pattern-based augmenters: guided warping, SPAWNER, weighted DBA, DTW-Merge.

All references come from a frozen per-class pool of the original training
split; a sample is never aligned against another class except as a
discriminative exemplar in DGW scoring.
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import AugmentationError, InsufficientPoolError
from ..models import Dataset, DtwParams, PatternParams, TimeSeries, as_series
from .dtw_service import (
    WarpPath, default_desc_window, dtw, dtw_distance, dtw_from_cost, local_cost_matrix, shape_dtw
)
from .random_service import RandomStream
from .series_service import linear_resample


LN_HALF = math.log(0.5)

Member = Tuple[int, TimeSeries]


@dataclass(frozen=True)
class ClassPool:
    """Read-only snapshot of the training split grouped by label."""
    members: Dict[str, Tuple[Member, ...]]

    @classmethod
    def from_dataset(cls, dataset: Dataset) -> "ClassPool":
        grouped: Dict[str, List[Member]] = {label: [] for label in dataset.classes}
        for index, item in enumerate(dataset.items):
            grouped[item.label].append((index, item.series))
        return cls(members={label: tuple(rows) for label, rows in grouped.items()})

    def size(self, label: str) -> int:
        return len(self.members.get(label, ()))

    def same_class(self, label: str, exclude: Optional[int] = None) -> List[Member]:
        return [m for m in self.members.get(label, ()) if m[0] != exclude]

    def other_class(self, label: str) -> List[Member]:
        return [m for other, rows in self.members.items() if other != label for m in rows]


def _draw(candidates: Sequence[Member], count: int, stream: RandomStream) -> List[Member]:
    picks = stream.choice(len(candidates), size=min(count, len(candidates)), replace=False)
    return [candidates[int(p)] for p in picks]


def _references(sample: TimeSeries, pool: ClassPool, label: str,
                exclude: Optional[int]) -> List[Member]:
    candidates = pool.same_class(label, exclude)
    if candidates:
        return candidates
    if pool.size(label) > 0:
        # only the sample itself is left: self-reference
        return [(-1, as_series(sample))]
    raise InsufficientPoolError(f"class '{label}' has no members in the pool")


def warp_to_reference(sample: TimeSeries, reference: TimeSeries, path: WarpPath) -> TimeSeries:
    """Put the sample on the reference time axis: mean of sample[i] per j."""
    n, m = len(sample), len(reference)
    if tuple(path.pairs[0]) != (0, 0) or tuple(path.pairs[-1]) != (n - 1, m - 1):
        raise ValueError("path endpoints do not match the sample and reference lengths")
    values = np.asarray(sample, dtype=np.float64)[path.i]
    totals = np.bincount(path.j, weights=values, minlength=m)
    counts = np.bincount(path.j, minlength=m)
    return as_series(totals / counts)


def _aligner(shape: bool, desc_window: Optional[int], dtw_params: DtwParams):
    if not shape:
        return lambda a, b: dtw(a, b, dtw_params)
    return lambda a, b: shape_dtw(a, b, desc_window or default_desc_window(len(a)), dtw_params)


def _guided(sample: TimeSeries, reference: TimeSeries, align) -> TimeSeries:
    warped = warp_to_reference(sample, reference, align(sample, reference).path)
    if len(warped) != len(sample):
        warped = linear_resample(warped, len(sample))
    return warped


def rgw(sample: TimeSeries, pool: ClassPool, label: str, params: PatternParams,
        stream: RandomStream, exclude: Optional[int] = None, shape: bool = False) -> TimeSeries:
    """Random guided warping onto a uniformly drawn same-class reference."""
    candidates = _references(sample, pool, label, exclude)
    _, reference = candidates[int(stream.integers(0, len(candidates)))]
    return _guided(sample, reference, _aligner(shape, params.desc_window, params.dtw))


def rgws(sample: TimeSeries, pool: ClassPool, label: str, params: PatternParams,
         stream: RandomStream, exclude: Optional[int] = None) -> TimeSeries:
    return rgw(sample, pool, label, params, stream, exclude=exclude, shape=True)


def discriminative_scores(intra: np.ndarray, inter: np.ndarray) -> np.ndarray:
    """Mean distance to the other-class batch minus mean distance to the rest
    of the same-class batch, per candidate."""
    k = intra.shape[0]
    intra_mean = intra.sum(axis=1) / (k - 1) if k > 1 else np.zeros(k)
    return inter.mean(axis=1) - intra_mean


def dgw(sample: TimeSeries, pool: ClassPool, label: str, params: PatternParams,
        stream: RandomStream, exclude: Optional[int] = None, shape: bool = False) -> TimeSeries:
    """Discriminative guided warping onto the most class-separating candidate."""
    negatives = pool.other_class(label)
    if not negatives:
        raise InsufficientPoolError(f"no other-class exemplars for class '{label}'")
    candidates = _references(sample, pool, label, exclude)
    positives = _draw(candidates, params.dgw_batch, stream)
    exemplars = _draw(negatives, params.dgw_batch, stream)

    align = _aligner(shape, params.desc_window, params.dtw)
    if shape:
        distance: Callable[[TimeSeries, TimeSeries], float] = lambda a, b: align(a, b).distance
    else:
        distance = lambda a, b: dtw_distance(a, b, params.dtw)

    k = len(positives)
    intra = np.zeros((k, k))
    for p in range(k):
        for q in range(p + 1, k):
            intra[p, q] = intra[q, p] = distance(positives[p][1], positives[q][1])
    inter = np.array([[distance(pos[1], neg[1]) for neg in exemplars] for pos in positives])
    guide = positives[int(np.argmax(discriminative_scores(intra, inter)))][1]
    return _guided(sample, guide, align)


def dgws(sample: TimeSeries, pool: ClassPool, label: str, params: PatternParams,
         stream: RandomStream, exclude: Optional[int] = None) -> TimeSeries:
    return dgw(sample, pool, label, params, stream, exclude=exclude, shape=True)


def spawner_path(x1: TimeSeries, x2: TimeSeries, waypoint: int,
                 window_fraction: float) -> Optional[WarpPath]:
    """DTW path forced through (waypoint, waypoint); None if infeasible.

    Both halves share the band of the full alignment, ``ceil(fraction * n)`` cells.
    """
    band = int(math.ceil(window_fraction * len(x1)))
    cost = local_cost_matrix(x1, x2)
    head = dtw_from_cost(cost[:waypoint + 1, :waypoint + 1], band=band)
    tail = dtw_from_cost(cost[waypoint:, waypoint:], band=band)
    if not (math.isfinite(head.distance) and math.isfinite(tail.distance)):
        return None
    return WarpPath(pairs=np.vstack((head.path.pairs, tail.path.pairs[1:] + waypoint)))


def spawner(x1: TimeSeries, x2: TimeSeries, params: PatternParams, stream: RandomStream) -> TimeSeries:
    """Average two same-class series along a waypoint-constrained path, add noise."""
    n = len(x1)
    if len(x2) != n:
        raise ValueError(f"SPAWNER parents differ in length ({n} vs {len(x2)})")
    if n < 4:
        raise ValueError("SPAWNER needs series of length >= 4")
    path = None
    for _ in range(params.spawner_max_attempts):
        waypoint = int(stream.integers(1, n - 1))
        path = spawner_path(x1, x2, waypoint, params.spawner_window_fraction)
        if path is not None:
            break
    if path is None:
        raise AugmentationError(
            f"no admissible SPAWNER path after {params.spawner_max_attempts} waypoints")
    mean = 0.5 * (np.asarray(x1)[path.i] + np.asarray(x2)[path.j])
    averaged = np.asarray(linear_resample(mean, n))
    if params.spawner_sigma > 0:
        averaged = averaged + stream.normal(0.0, params.spawner_sigma, size=n)
    return as_series(averaged)


def asd_weights(group: Sequence[TimeSeries], reference_index: int, dtw_params: DtwParams) -> np.ndarray:
    """Average Selected with Distance weights relative to the reference."""
    size = len(group)
    if size < 3:
        return np.ones(size)
    reference = group[reference_index]
    distances = np.array([
        0.0 if k == reference_index else dtw_distance(member, reference, dtw_params)
        for k, member in enumerate(group)
    ])
    nearest = np.min(np.delete(distances, reference_index))
    if nearest == 0:
        return np.ones(size)
    weights = np.exp(LN_HALF * distances / nearest)
    weights[reference_index] = 1.0
    return np.clip(weights, np.finfo(np.float64).tiny, 1.0)


def dba_objective(group: Sequence[TimeSeries], weights: np.ndarray, barycenter: TimeSeries,
                  dtw_params: DtwParams) -> float:
    return float(sum(w * dtw(member, barycenter, dtw_params).distance
                     for member, w in zip(group, weights)))


def weighted_dba(group: Sequence[TimeSeries], weights: np.ndarray, initial: TimeSeries,
                 iterations: int, dtw_params: DtwParams) -> Tuple[TimeSeries, List[float]]:
    """Weighted DTW barycenter averaging; returns the barycenter and the
    objective before the first and after every iteration."""
    barycenter = np.array(initial, dtype=np.float64)
    history: List[float] = []
    for _ in range(iterations):
        sums = np.zeros_like(barycenter)
        mass = np.zeros_like(barycenter)
        objective = 0.0
        for member, weight in zip(group, weights):
            result = dtw(barycenter, member, dtw_params)
            objective += weight * result.distance
            np.add.at(sums, result.path.i, weight * np.asarray(member)[result.path.j])
            np.add.at(mass, result.path.i, weight)
        history.append(float(objective))
        barycenter = sums / mass
    history.append(dba_objective(group, weights, barycenter, dtw_params))
    return as_series(barycenter), history


def wdba(group: Sequence[TimeSeries], params: PatternParams, stream: RandomStream) -> TimeSeries:
    if not group:
        raise ValueError("wDBA needs a non-empty group")
    if len({len(member) for member in group}) != 1:
        raise ValueError("wDBA group members must share one length")
    if len(group) == 1:
        return as_series(group[0])
    reference_index = int(stream.integers(0, len(group)))
    weights = asd_weights(group, reference_index, params.dtw)
    barycenter, _ = weighted_dba(group, weights, group[reference_index],
                                 params.wdba_iterations, params.dtw)
    return barycenter


def _collapse(indices: np.ndarray) -> np.ndarray:
    """Keep the first of each run of repeated indices."""
    if indices.size == 0:
        return indices
    return indices[np.concatenate(([True], np.diff(indices) != 0))]


def merge_at(x1: TimeSeries, x2: TimeSeries, path: WarpPath, cut: int) -> TimeSeries:
    """x1 before path position ``cut`` followed by x2 from it, resampled to len(x1)."""
    head = np.asarray(x1)[_collapse(path.i[:cut])]
    tail = np.asarray(x2)[_collapse(path.j[cut:])]
    return linear_resample(np.concatenate((head, tail)), len(x1))


def dtw_merge(x1: TimeSeries, x2: TimeSeries, params: PatternParams, stream: RandomStream) -> TimeSeries:
    if len(x1) < 2 or len(x2) < 2:
        raise ValueError("DTW-Merge needs series of length >= 2")
    path = dtw(x1, x2, params.dtw).path
    cut = int(stream.integers(1, len(path)))
    return merge_at(x1, x2, path, cut)
