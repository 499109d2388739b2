"""
Desk-scale evaluation harness.

This service manages:
- 1-NN classification (Euclidean or banded DTW)
- Accuracy, tie-aware method ranking and residuals against the baseline
- Report files (CSV tables and a JSON summary)
- Optional persistence of results and log records
"""
import json
import logging
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist
from sqlmodel import Session
from tqdm import tqdm

from ..exceptions import MissingBaselineError
from ..models import (
    AugmentSpec, ClassifierEnum, Dataset, DtwParams, EvalRecord, EvalResult,
    LogCreate, MethodSummary, RankEntry
)
from . import log_service
from .dtw_service import nearest_neighbor
from .pipeline_service import PipelineService
from .registry import BASELINE, describe_params, get_method, method_names, resolve_params
from .series_service import normalize_splits

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 0.1
STD_CONVENTION = "population"

AccuracyTable = Dict[str, Dict[str, float]]


# --- Classification ---

def _padded_bank(dataset: Dataset) -> Tuple[np.ndarray, np.ndarray]:
    lengths = np.array(dataset.lengths, dtype=np.int64)
    bank = np.full((len(dataset), int(lengths.max())), np.nan)
    for k, item in enumerate(dataset.items):
        bank[k, :len(item)] = item.series
    return bank, lengths


def knn1_classify(train: Dataset, test: Dataset,
                  classifier: ClassifierEnum = ClassifierEnum.DTW,
                  window_fraction: float = DEFAULT_WINDOW, jobs: int = 1) -> List[str]:
    """Label of the nearest training item for every test item; ties go to the lowest index."""
    if len(train) == 0:
        raise ValueError("1-NN needs a non-empty training split")
    labels = train.labels
    if ClassifierEnum(classifier) == ClassifierEnum.EUCLIDEAN:
        if train.fixed_length is None or train.fixed_length != test.fixed_length:
            raise ValueError("Euclidean 1-NN needs train and test series of one common length")
        distances = cdist(np.vstack([i.series for i in test.items]),
                          np.vstack([i.series for i in train.items]), metric="sqeuclidean")
        return [labels[int(k)] for k in np.argmin(distances, axis=1)]

    bank, lengths = _padded_bank(train)
    params = DtwParams(window_fraction=window_fraction)

    def predict(series) -> str:
        index, _ = nearest_neighbor(series, bank, lengths, params)
        return labels[index]

    queries = [item.series for item in test.items]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(predict, queries))
    return [predict(q) for q in queries]


def accuracy(predictions: Sequence[str], truth: Sequence[str]) -> float:
    if len(predictions) != len(truth):
        raise ValueError(f"{len(predictions)} predictions for {len(truth)} labels")
    if not truth:
        raise ValueError("accuracy of an empty prediction set")
    correct = sum(1 for p, t in zip(predictions, truth) if p == t)
    return correct / len(truth)


# --- Metrics ---

def accuracy_table(results: Sequence[EvalResult]) -> AccuracyTable:
    table: AccuracyTable = {}
    for result in results:
        table.setdefault(result.dataset, {})[result.method] = result.accuracy
    return table


def _frame(table: Mapping[str, Mapping[str, float]]) -> pd.DataFrame:
    """dataset x method matrix, methods in first-seen order."""
    methods: List[str] = []
    for row in table.values():
        methods.extend(m for m in row if m not in methods)
    frame = pd.DataFrame.from_dict(table, orient="index").reindex(columns=methods)
    frame.index.name = "dataset"
    if frame.isna().any().any():
        raise ValueError("every method needs a result on every dataset")
    return frame


def _category(method: str) -> str:
    try:
        return get_method(method).category.value
    except KeyError:
        return "unknown"


def rank_methods(table: Mapping[str, Mapping[str, float]]) -> List[RankEntry]:
    """Per-dataset ranks (1 = best, ties averaged) and their mean over datasets."""
    frame = _frame(table)
    if frame.shape[1] < 2:
        raise ValueError("ranking needs at least two methods")
    ranks = frame.rank(axis=1, ascending=False, method="average")
    best = frame.eq(frame.max(axis=1), axis=0).sum(axis=0)
    entries = [
        RankEntry(
            method=method,
            category=_category(method),
            ranks={dataset: float(ranks.at[dataset, method]) for dataset in frame.index},
            average_rank=float(ranks[method].mean()),
            best_count=int(best[method]),
        )
        for method in frame.columns
    ]
    return sorted(entries, key=lambda entry: (entry.average_rank, entry.method))


def residuals(table: Mapping[str, Mapping[str, float]], baseline: str = BASELINE) -> AccuracyTable:
    """accuracy(method) - accuracy(baseline) per dataset; positive means better."""
    out: AccuracyTable = {}
    for dataset, row in table.items():
        if baseline not in row:
            raise MissingBaselineError(f"baseline '{baseline}' has no result on '{dataset}'")
        reference = row[baseline]
        out[dataset] = {method: value - reference for method, value in row.items()}
    return out


def method_summaries(table: Mapping[str, Mapping[str, float]],
                     ranking: Sequence[RankEntry]) -> List[MethodSummary]:
    frame = _frame(table)
    average = {entry.method: entry.average_rank for entry in ranking}
    return [
        MethodSummary(
            method=method,
            mean_accuracy=float(frame[method].mean()),
            std_accuracy=float(frame[method].std(ddof=0)),
            average_rank=average[method],
        )
        for method in frame.columns
    ]


def dataset_performance(table: Mapping[str, Mapping[str, float]]) -> pd.DataFrame:
    """Mean accuracy over methods and the best method per dataset, best datasets first."""
    frame = _frame(table)
    perf = pd.DataFrame({
        "dataset": frame.index,
        "mean_accuracy": frame.mean(axis=1).to_numpy(),
        "best_method": frame.idxmax(axis=1).to_numpy(),
        "best_accuracy": frame.max(axis=1).to_numpy(),
    })
    return perf.sort_values(["mean_accuracy", "dataset"], ascending=[False, True],
                            kind="mergesort").reset_index(drop=True)


def residual_summary(resid: Mapping[str, Mapping[str, float]]) -> pd.DataFrame:
    frame = _frame(resid)
    return pd.DataFrame({
        "method": frame.columns,
        "mean_residual": frame.mean(axis=0).to_numpy(),
        "wins": (frame > 0).sum(axis=0).to_numpy(),
        "losses": (frame < 0).sum(axis=0).to_numpy(),
        "ties": (frame == 0).sum(axis=0).to_numpy(),
    })


# --- Reports ---

def _header(run: Mapping[str, Any]) -> str:
    lines = [f"# {key}: {json.dumps(value, sort_keys=True)}" for key, value in sorted(run.items())]
    return "\n".join(lines) + "\n"


def _write_csv(frame: pd.DataFrame, path: Path, run: Mapping[str, Any], index: bool) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(_header(run))
        frame.to_csv(handle, index=index, lineterminator="\n")


def emit_reports(results: Sequence[EvalResult], out_dir: Union[str, Path],
                 run: Optional[Mapping[str, Any]] = None, baseline: str = BASELINE) -> List[Path]:
    """Write the report set; every file is a pure function of ``results`` and ``run``."""
    if not results:
        raise ValueError("no results to report")
    run = dict(run or {})
    run.setdefault("std", STD_CONVENTION)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    table = accuracy_table(results)
    frame = _frame(table)
    ranking = rank_methods(table)
    resid = residuals(table, baseline)
    written = []

    def target(name: str) -> Path:
        written.append(out / name)
        return out / name

    _write_csv(frame, target("accuracy.csv"), run, index=True)

    rank_rows = pd.DataFrame([
        {"method": e.method, "category": e.category, "average_rank": e.average_rank,
         "best_count": e.best_count, **{f"rank:{d}": r for d, r in e.ranks.items()}}
        for e in ranking
    ])
    _write_csv(rank_rows, target("ranking.csv"), run, index=False)

    resid_long = pd.DataFrame(
        [(d, m, v) for d, row in resid.items() for m, v in row.items()],
        columns=["dataset", "method", "residual"])
    _write_csv(resid_long, target("residuals.csv"), run, index=False)

    heat = frame.reset_index().melt(id_vars="dataset", var_name="method", value_name="accuracy")
    _write_csv(heat, target("heatmap_long.csv"), run, index=False)

    _write_csv(dataset_performance(table), target("datasets.csv"), run, index=False)
    _write_csv(residual_summary(resid), target("residual_summary.csv"), run, index=False)

    summary = {
        "run": run,
        "methods": [s.model_dump() for s in method_summaries(table, ranking)],
    }
    target("summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n",
                                      encoding="utf-8")
    logger.info("✅ Wrote %d report files to %s", len(written), out)
    return written


# --- Orchestration ---

@dataclass
class BenchConfig:
    methods: List[str] = field(default_factory=method_names)
    classifier: ClassifierEnum = ClassifierEnum.DTW
    window_fraction: float = DEFAULT_WINDOW
    factor: int = 4
    seed: int = 0
    params: Dict[str, Any] = field(default_factory=dict)
    jobs: int = 1

    def run_info(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "classifier": ClassifierEnum(self.classifier).value,
            "window": self.window_fraction,
            "factor": self.factor,
            "methods": list(self.methods),
            "params": describe_params(resolve_params(self.params)),
            "std": STD_CONVENTION,
        }


def run_benchmark(datasets: Sequence[Tuple[Dataset, Dataset]], config: BenchConfig,
                  session: Optional[Session] = None, progress: bool = True) -> List[EvalResult]:
    """Expand, classify and score every (dataset, method) pair."""
    methods = [get_method(m).name for m in config.methods]
    if BASELINE not in methods:
        methods.insert(0, BASELINE)
    resolve_params(config.params)
    run_id = uuid.uuid4().hex
    results: List[EvalResult] = []

    bar = tqdm(total=len(datasets) * len(methods), desc="bench", unit="eval", disable=not progress)
    for train_raw, test_raw in datasets:
        train, test, _ = normalize_splits(train_raw, test_raw)
        truth = test.labels
        for method in methods:
            bar.set_postfix_str(f"{train.name}:{method}")
            started = time.perf_counter()
            spec = AugmentSpec(method=method, params=config.params,
                               factor=config.factor, seed=config.seed)
            expanded, runlog = PipelineService.expand(train, spec, jobs=config.jobs)
            predictions = knn1_classify(expanded, test, config.classifier,
                                        config.window_fraction, jobs=config.jobs)
            result = EvalResult(dataset=train.name, method=method,
                                accuracy=accuracy(predictions, truth),
                                runtime=time.perf_counter() - started)
            results.append(result)
            logger.debug("%s %s accuracy=%.4f", train.name, method, result.accuracy)
            if session is not None:
                _store(session, run_id, config, result, runlog.fallback_count)
            bar.update(1)
    bar.close()
    return results


def _store(session: Session, run_id: str, config: BenchConfig, result: EvalResult,
           fallbacks: int) -> None:
    record = EvalRecord(run_id=run_id, classifier=ClassifierEnum(config.classifier).value,
                        seed=config.seed, factor=config.factor, **result.model_dump())
    session.add(record)
    session.commit()
    log_service.create_log(session, LogCreate(
        level="INFO",
        message=f"{result.dataset}/{result.method} accuracy {result.accuracy:.4f}",
        details={"runtime": result.runtime, "fallbacks": fallbacks},
        run_id=run_id, dataset=result.dataset, method=result.method,
    ))
    if fallbacks:
        log_service.create_log(session, LogCreate(
            level="WARNING",
            message=f"{result.dataset}/{result.method}: {fallbacks} samples copied verbatim",
            details={"fallbacks": fallbacks},
            run_id=run_id, dataset=result.dataset, method=result.method,
        ))
