# Models package: series containers, method parameters, run provenance, results
from .base import TimestampMixin
from .series import (
    TimeSeries, LabeledSeries, Dataset, SplitEnum,
    NormalizationParams, ArchiveEntry, as_series, label_sort_key
)
from .params import (
    LocalCostEnum, DtwParams, TransformDefaults, SfccParams,
    PatternParams, EmdParams, AugmentParams, AugmentSpec
)
from .method import CategoryEnum, BranchEnum, PoolRequirementEnum, MethodInfo
from .run import RunLogRecord, RunLog, RunMeta
from .result import EvalResult, EvalRecord, RankEntry, MethodSummary, ClassifierEnum
from .log import Log, LogCreate, LogLevelEnum, LogRead

__all__ = [
    "TimestampMixin",
    # Series
    "TimeSeries",
    "LabeledSeries",
    "Dataset",
    "SplitEnum",
    "NormalizationParams",
    "ArchiveEntry",
    "as_series",
    "label_sort_key",
    # Parameters
    "LocalCostEnum",
    "DtwParams",
    "TransformDefaults",
    "SfccParams",
    "PatternParams",
    "EmdParams",
    "AugmentParams",
    "AugmentSpec",
    # Methods
    "CategoryEnum",
    "BranchEnum",
    "PoolRequirementEnum",
    "MethodInfo",
    # Run provenance
    "RunLogRecord",
    "RunLog",
    "RunMeta",
    # Results
    "EvalResult",
    "EvalRecord",
    "RankEntry",
    "MethodSummary",
    "ClassifierEnum",
    # Log
    "Log",
    "LogLevelEnum",
    "LogCreate",
    "LogRead",
]
