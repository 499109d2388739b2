"""Method registry, dotted parameter keys and the per-sample method adapters.

Each adapter turns a ``SampleContext`` into an ``Outcome``: the generated
series plus the fallbacks and warnings recorded in the run log.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Tuple

from pydantic import ValidationError

from ..exceptions import InsufficientPoolError, InvalidParamsError, UnknownMethodError
from ..models import (
    AugmentParams, BranchEnum, CategoryEnum, MethodInfo, PoolRequirementEnum,
    TimeSeries, as_series
)
from . import emd_service, frequency_service, pattern_service, transform_service
from .pattern_service import ClassPool
from .random_service import RandomStream

logger = logging.getLogger(__name__)

BASELINE = "none"

_T, _P, _D = CategoryEnum.TRANSFORMATION, CategoryEnum.PATTERN, CategoryEnum.DECOMPOSITION

METHODS: Tuple[MethodInfo, ...] = (
    MethodInfo(name="none", display_name="None", category=CategoryEnum.BASELINE,
               branch=BranchEnum.BASELINE),
    MethodInfo(name="jitter", display_name="Jittering", category=_T, branch=BranchEnum.MAGNITUDE),
    MethodInfo(name="rotation", display_name="Rotation", category=_T, branch=BranchEnum.MAGNITUDE),
    MethodInfo(name="scaling", display_name="Scaling", category=_T, branch=BranchEnum.MAGNITUDE),
    MethodInfo(name="magnitude_warp", display_name="Magnitude Warping", category=_T,
               branch=BranchEnum.MAGNITUDE),
    MethodInfo(name="permutation", display_name="Permutation", category=_T, branch=BranchEnum.TIME),
    MethodInfo(name="random_permutation", display_name="Random Permutation", category=_T,
               branch=BranchEnum.TIME),
    MethodInfo(name="time_warp", display_name="Time Warping", category=_T, branch=BranchEnum.TIME),
    MethodInfo(name="window_slice", display_name="Window Slicing", category=_T, branch=BranchEnum.TIME),
    MethodInfo(name="window_warp", display_name="Window Warping", category=_T, branch=BranchEnum.TIME),
    MethodInfo(name="sfcc", display_name="SFCC", category=_T, branch=BranchEnum.FREQUENCY,
               pool=PoolRequirementEnum.PAIR),
    MethodInfo(name="spawner", display_name="SPAWNER", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.PAIR),
    MethodInfo(name="wdba", display_name="wDBA", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.GROUP),
    MethodInfo(name="rgw", display_name="RGW", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.PAIR),
    MethodInfo(name="rgws", display_name="RGWs", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.PAIR),
    MethodInfo(name="dgw", display_name="DGW", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.DISCRIMINATIVE),
    MethodInfo(name="dgws", display_name="DGWs", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.DISCRIMINATIVE),
    MethodInfo(name="dtw_merge", display_name="DTW-Merge", category=_P, branch=BranchEnum.PATTERN,
               pool=PoolRequirementEnum.PAIR),
    MethodInfo(name="emd", display_name="EMD", category=_D, branch=BranchEnum.DECOMPOSITION),
)

_BY_NAME: Dict[str, MethodInfo] = {info.name: info for info in METHODS}

# dotted override key -> path inside AugmentParams
PARAM_KEYS: Dict[str, Tuple[str, ...]] = {
    "jitter.sigma": ("transform", "jitter_sigma"),
    "scaling.sigma": ("transform", "scale_sigma"),
    "magnitude_warp.sigma": ("transform", "mag_warp_sigma"),
    "magnitude_warp.knots": ("transform", "mag_warp_knots"),
    "time_warp.sigma": ("transform", "time_warp_sigma"),
    "time_warp.knots": ("transform", "time_warp_knots"),
    "permutation.segments": ("transform", "perm_segments"),
    "random_permutation.segments": ("transform", "random_perm_segments"),
    "window_slice.ratio": ("transform", "slice_ratio"),
    "window_warp.ratio": ("transform", "window_ratio"),
    "window_warp.scales": ("transform", "window_scales"),
    "sfcc.strata": ("sfcc", "strata"),
    "spawner.sigma": ("pattern", "spawner_sigma"),
    "spawner.window_fraction": ("pattern", "spawner_window_fraction"),
    "spawner.max_attempts": ("pattern", "spawner_max_attempts"),
    "wdba.group_size": ("pattern", "wdba_group_size"),
    "wdba.iterations": ("pattern", "wdba_iterations"),
    "dgw.batch": ("pattern", "dgw_batch"),
    "shape.desc_window": ("pattern", "desc_window"),
    "dtw.window_fraction": ("pattern", "dtw", "window_fraction"),
    "dtw.local_cost": ("pattern", "dtw", "local_cost"),
    "emd.k": ("emd", "k"),
    "emd.max_imfs": ("emd", "max_imfs"),
    "emd.sd_threshold": ("emd", "sd_threshold"),
    "emd.max_sifts": ("emd", "max_sifts"),
}


def list_methods() -> List[MethodInfo]:
    return list(METHODS)


def method_names() -> List[str]:
    return [info.name for info in METHODS]


def get_method(name: str) -> MethodInfo:
    key = name.strip().lower()
    if key not in _BY_NAME:
        raise UnknownMethodError(name, method_names())
    return _BY_NAME[key]


def resolve_params(overrides: Mapping[str, Any] = None) -> AugmentParams:
    """Apply dotted-key overrides on top of the defaults and validate."""
    data = AugmentParams().model_dump()
    for key, value in (overrides or {}).items():
        path = PARAM_KEYS.get(key)
        if path is None:
            raise InvalidParamsError(
                f"unknown parameter '{key}'; known keys: {', '.join(sorted(PARAM_KEYS))}")
        node = data
        for part in path[:-1]:
            node = node[part]
        node[path[-1]] = value
    try:
        return AugmentParams.model_validate(data)
    except ValidationError as exc:
        raise InvalidParamsError(f"invalid parameters: {exc}") from exc


def describe_params(params: AugmentParams) -> Dict[str, Any]:
    """Flat dotted-key view of every parameter, JSON-ready."""
    data = params.model_dump(mode="json")
    flat: Dict[str, Any] = {}
    for key, path in PARAM_KEYS.items():
        node = data
        for part in path:
            node = node[part]
        flat[key] = node
    return flat


@dataclass(frozen=True)
class SampleContext:
    """Everything an adapter may use to generate one copy of one sample."""
    index: int
    series: TimeSeries
    label: str
    pool: ClassPool
    params: AugmentParams
    stream: RandomStream


@dataclass
class Outcome:
    series: TimeSeries
    fallbacks: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def _partners(ctx: SampleContext) -> List[pattern_service.Member]:
    """Same-class members other than the sample that share its length."""
    n = len(ctx.series)
    partners = [m for m in ctx.pool.same_class(ctx.label, exclude=ctx.index) if len(m[1]) == n]
    if not partners:
        raise InsufficientPoolError(
            f"no same-length partner for sample {ctx.index} in class '{ctx.label}'")
    return partners


def _one_partner(ctx: SampleContext) -> TimeSeries:
    partners = _partners(ctx)
    return partners[int(ctx.stream.integers(0, len(partners)))][1]


def _none(ctx: SampleContext) -> Outcome:
    return Outcome(as_series(ctx.series))


def _jitter(ctx: SampleContext) -> Outcome:
    return Outcome(transform_service.jitter(ctx.series, ctx.params.transform.jitter_sigma, ctx.stream))


def _rotation(ctx: SampleContext) -> Outcome:
    return Outcome(transform_service.flip_rotation(ctx.series))


def _scaling(ctx: SampleContext) -> Outcome:
    return Outcome(transform_service.scaling(ctx.series, ctx.params.transform.scale_sigma, ctx.stream))


def _magnitude_warp(ctx: SampleContext) -> Outcome:
    t = ctx.params.transform
    return Outcome(transform_service.magnitude_warp(ctx.series, t.mag_warp_sigma, t.mag_warp_knots, ctx.stream))


def _permutation(ctx: SampleContext) -> Outcome:
    return Outcome(transform_service.permutation(ctx.series, ctx.params.transform.perm_segments, ctx.stream))


def _random_permutation(ctx: SampleContext) -> Outcome:
    return Outcome(transform_service.random_permutation(
        ctx.series, ctx.params.transform.random_perm_segments, ctx.stream))


def _time_warp(ctx: SampleContext) -> Outcome:
    t = ctx.params.transform
    return Outcome(transform_service.time_warp(ctx.series, t.time_warp_sigma, t.time_warp_knots, ctx.stream))


def _window_slice(ctx: SampleContext) -> Outcome:
    return Outcome(transform_service.window_slice(ctx.series, ctx.params.transform.slice_ratio, ctx.stream))


def _window_warp(ctx: SampleContext) -> Outcome:
    t = ctx.params.transform
    return Outcome(transform_service.window_warp(ctx.series, t.window_ratio, t.window_scales, ctx.stream))


def _sfcc(ctx: SampleContext) -> Outcome:
    partner = _one_partner(ctx)
    return Outcome(frequency_service.sfcc(ctx.series, partner, ctx.params.sfcc.strata, ctx.stream))


def _spawner(ctx: SampleContext) -> Outcome:
    partner = _one_partner(ctx)
    return Outcome(pattern_service.spawner(ctx.series, partner, ctx.params.pattern, ctx.stream))


def _dtw_merge(ctx: SampleContext) -> Outcome:
    partner = _one_partner(ctx)
    return Outcome(pattern_service.dtw_merge(ctx.series, partner, ctx.params.pattern, ctx.stream))


def _wdba(ctx: SampleContext) -> Outcome:
    # the sample plus group_size - 1 same-class members of its length
    partners = _partners(ctx)
    extra = min(ctx.params.pattern.wdba_group_size - 1, len(partners))
    picks = ctx.stream.choice(len(partners), size=extra, replace=False) if extra else []
    group = [ctx.series] + [partners[int(p)][1] for p in picks]
    return Outcome(pattern_service.wdba(group, ctx.params.pattern, ctx.stream))


def _guided(shape: bool) -> Callable[[SampleContext], Outcome]:
    def adapter(ctx: SampleContext) -> Outcome:
        out = pattern_service.rgw(ctx.series, ctx.pool, ctx.label, ctx.params.pattern,
                                  ctx.stream, exclude=ctx.index, shape=shape)
        return Outcome(out)
    return adapter


def _discriminative(shape: bool) -> Callable[[SampleContext], Outcome]:
    def adapter(ctx: SampleContext) -> Outcome:
        if not ctx.pool.other_class(ctx.label):
            out = pattern_service.rgw(ctx.series, ctx.pool, ctx.label, ctx.params.pattern,
                                      ctx.stream, exclude=ctx.index, shape=shape)
            return Outcome(out, fallbacks=["no_other_class:rgw"])
        out = pattern_service.dgw(ctx.series, ctx.pool, ctx.label, ctx.params.pattern,
                                  ctx.stream, exclude=ctx.index, shape=shape)
        return Outcome(out)
    return adapter


def _emd(ctx: SampleContext) -> Outcome:
    e = ctx.params.emd
    if len(ctx.series) < 4:
        return Outcome(as_series(ctx.series), warnings=["series too short for EMD; copied"])
    imf_set = emd_service.emd(ctx.series, e.max_imfs, e.sd_threshold, e.max_sifts)
    warnings = []
    if not imf_set.imfs:
        warnings.append("EMD found no IMFs; copied")
    elif len(imf_set.imfs) < e.k:
        warnings.append(f"only {len(imf_set.imfs)} IMFs available for k={e.k}")
    return Outcome(emd_service.leading_imfs(imf_set, e.k, ctx.series), warnings=warnings)


ADAPTERS: Dict[str, Callable[[SampleContext], Outcome]] = {
    "none": _none,
    "jitter": _jitter,
    "rotation": _rotation,
    "scaling": _scaling,
    "magnitude_warp": _magnitude_warp,
    "permutation": _permutation,
    "random_permutation": _random_permutation,
    "time_warp": _time_warp,
    "window_slice": _window_slice,
    "window_warp": _window_warp,
    "sfcc": _sfcc,
    "spawner": _spawner,
    "wdba": _wdba,
    "rgw": _guided(shape=False),
    "rgws": _guided(shape=True),
    "dgw": _discriminative(shape=False),
    "dgws": _discriminative(shape=True),
    "dtw_merge": _dtw_merge,
    "emd": _emd,
}


def adapter_for(name: str) -> Callable[[SampleContext], Outcome]:
    return ADAPTERS[get_method(name).name]
