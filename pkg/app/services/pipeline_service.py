"""
Class-aware dataset expansion.

This service manages:
- Resolving an AugmentSpec against the method registry
- Expanding a training split by an integer factor, originals first
- Per-sample fallbacks and the RunLog
- Writing the augmented TSV with its run log and metadata
"""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

from ..exceptions import DatasetFormatError, InsufficientPoolError, InvalidParamsError, TsaugError
from ..models import (
    AugmentSpec, Dataset, LabeledSeries, RunLog, RunLogRecord, RunMeta, as_series
)
from .pattern_service import ClassPool
from .random_service import RandomStream
from .registry import Outcome, SampleContext, adapter_for, describe_params, get_method, resolve_params
from .series_service import normalize_splits, write_ucr_tsv

logger = logging.getLogger(__name__)

SINGLE_EXEMPLAR = "single_exemplar_class:copy"
NO_PARTNER = "no_same_length_partner:copy"


@dataclass(frozen=True)
class AugmentRun:
    dataset: Dataset
    runlog: RunLog
    meta: RunMeta


def runlog_path(output: Union[str, Path]) -> Path:
    return Path(f"{output}.runlog.jsonl")


def meta_path(output: Union[str, Path]) -> Path:
    return Path(f"{output}.meta.json")


class PipelineService:
    """Expansion of a training split by one registered method."""

    @staticmethod
    def expand(train: Dataset, spec: AugmentSpec, jobs: int = 1) -> Tuple[Dataset, RunLog]:
        """
        Expand ``train`` to ``factor`` times its size.

        Output order is every original unchanged, then the ``factor - 1``
        copies of item 0, then those of item 1, and so on. Each copy draws from
        its own lane ``(item, copy, method)`` so the bytes do not depend on
        ``jobs``.
        """
        if len(train) == 0:
            raise ValueError("cannot expand an empty training split")
        info = get_method(spec.method)
        params = resolve_params(spec.params)
        if spec.factor == 1:
            return train, RunLog()

        adapter = adapter_for(info.name)
        pool = ClassPool.from_dataset(train)
        tasks = [(i, c) for i in range(len(train)) for c in range(1, spec.factor)]

        def generate(task: Tuple[int, int]) -> Tuple[LabeledSeries, RunLogRecord]:
            index, copy_index = task
            item = train.items[index]
            lane = (index, copy_index, info.name)
            if info.needs_pool and pool.size(item.label) < 2:
                outcome = Outcome(as_series(item.series), fallbacks=[SINGLE_EXEMPLAR])
            else:
                ctx = SampleContext(index=index, series=item.series, label=item.label, pool=pool,
                                    params=params, stream=RandomStream(spec.seed, lane))
                try:
                    outcome = adapter(ctx)
                except InsufficientPoolError as exc:
                    outcome = Outcome(as_series(item.series), fallbacks=[NO_PARTNER],
                                      warnings=[str(exc)])
                except TsaugError:
                    raise
                except ValueError as exc:
                    raise InvalidParamsError(f"{info.name} cannot augment sample {index}: {exc}") from exc
            record = RunLogRecord(sample_index=index, copy_index=copy_index, method=info.name,
                                  lane=list(lane), fallbacks=outcome.fallbacks,
                                  warnings=outcome.warnings)
            return LabeledSeries(series=outcome.series, label=item.label), record

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                results = list(executor.map(generate, tasks))
        else:
            results = [generate(task) for task in tasks]

        runlog = RunLog(records=[record for _, record in results])
        if runlog.fallback_count:
            logger.warning("⚠️ %s: %d of %d generated samples fell back to verbatim copies",
                           info.name, runlog.fallback_count, len(tasks))
        items = list(train.items) + [item for item, _ in results]
        return train.with_items(items), runlog

    @staticmethod
    def augment(train_raw: Dataset, spec: AugmentSpec, jobs: int = 1) -> AugmentRun:
        """Sanitize, normalize to [-1, 1] on the training extrema, then expand."""
        params = resolve_params(spec.params)
        train, _, normalization = normalize_splits(train_raw)
        expanded, runlog = PipelineService.expand(train, spec, jobs=jobs)
        meta = RunMeta(
            dataset=train.name,
            method=get_method(spec.method).name,
            seed=spec.seed,
            factor=spec.factor,
            params=describe_params(params),
            normalization=normalization,
            items_in=len(train),
            items_out=len(expanded),
        )
        logger.info("✅ %s x%d on %s: %d -> %d items", meta.method, spec.factor,
                    train.name, meta.items_in, meta.items_out)
        return AugmentRun(dataset=expanded, runlog=runlog, meta=meta)

    @staticmethod
    def write_run(run: AugmentRun, output: Union[str, Path]) -> List[Path]:
        """Write the TSV, ``<output>.runlog.jsonl`` and ``<output>.meta.json``."""
        output = Path(output)
        write_ucr_tsv(run.dataset, output)
        written = [output, runlog_path(output), meta_path(output)]
        try:
            written[1].write_text(run.runlog.to_jsonl(), encoding="utf-8")
            written[2].write_text(
                json.dumps(run.meta.model_dump(mode="json"), indent=2, sort_keys=True) + "\n",
                encoding="utf-8")
        except OSError as exc:
            raise DatasetFormatError(f"cannot write run artifacts next to {output}: {exc}") from exc
        return written
