"""Command-line surface: augment, bench, list-methods, describe.

Exit codes: 0 success, 1 unexpected failure, 2 unknown method, 3 I/O or
dataset format, 4 invalid parameters, 5 baseline excluded from a bench.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from .config import configure_logging, get_settings, resolve_seed
from .exceptions import (
    DatasetFormatError, InvalidParamsError, TsaugError, UnknownMethodError
)
from .models import AugmentSpec, ClassifierEnum, Dataset, SplitEnum
from .services import bench_service
from .services.catalog_service import check_against_catalog, lookup
from .services.pipeline_service import PipelineService
from .services.registry import BASELINE, get_method, list_methods, method_names, resolve_params
from .services.series_service import dataset_summary, load_ucr_tsv

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_UNKNOWN_METHOD = 2
EXIT_IO = 3
EXIT_INVALID_PARAMS = 4
EXIT_BASELINE_EXCLUDED = 5


class BaselineExcluded(TsaugError):
    pass


def parse_param_overrides(pairs: Optional[Sequence[str]]) -> Dict[str, Any]:
    """``["sfcc.strata=8", "window_warp.scales=[0.5,2]"]`` -> dict; values are JSON when they parse."""
    overrides: Dict[str, Any] = {}
    for pair in pairs or []:
        key, sep, raw = pair.partition("=")
        if not sep or not key.strip():
            raise InvalidParamsError(f"--param expects key=value, got '{pair}'")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        overrides[key.strip()] = value
    return overrides


def _split_csv(value: Optional[str]) -> List[str]:
    return [part.strip().lower() for part in (value or "").split(",") if part.strip()]


def select_methods(methods: str, exclude: Optional[str]) -> List[str]:
    """Resolve ``--methods``/``--exclude``; the baseline always runs first."""
    excluded = _split_csv(exclude)
    if BASELINE in excluded:
        raise BaselineExcluded(f"the '{BASELINE}' baseline cannot be excluded from a bench")
    chosen = method_names() if methods.strip().lower() == "all" else _split_csv(methods)
    names = [get_method(name).name for name in chosen]
    for name in excluded:
        get_method(name)
    ordered = [BASELINE] + [n for n in names if n != BASELINE]
    return [n for n in dict.fromkeys(ordered) if n not in excluded]


# --- Commands ---

def load_run_config(path: str) -> AugmentSpec:
    """Read a ``{dataset, method, params, factor, seed}`` JSON run document."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetFormatError(f"cannot read run config {path}: {exc}") from exc
    try:
        return AugmentSpec.model_validate_json(text)
    except ValidationError as exc:
        raise InvalidParamsError(f"invalid run config {path}: {exc}") from exc


def _augment_spec(args: argparse.Namespace) -> AugmentSpec:
    if args.config:
        spec = load_run_config(args.config)
        if args.input:
            spec.dataset = args.input
        return spec
    if not args.method:
        raise InvalidParamsError("augment needs --method or --config")
    return AugmentSpec(dataset=args.input, method=args.method, params=parse_param_overrides(args.param),
                       factor=args.factor, seed=resolve_seed(args.seed))


def run_augment(args: argparse.Namespace) -> int:
    spec = _augment_spec(args)
    if not spec.dataset:
        raise InvalidParamsError("augment needs --input or a run config with a dataset")
    seed = spec.seed
    get_method(spec.method)
    resolve_params(spec.params)
    train = load_ucr_tsv(spec.dataset, SplitEnum.TRAIN)
    run = PipelineService.augment(train, spec, jobs=args.jobs)
    written = PipelineService.write_run(run, args.output)
    logger.info("✅ Wrote %s (%d items, seed %d) with %s", written[0], len(run.dataset), seed,
                ", ".join(p.name for p in written[1:]))
    return EXIT_OK


def _bench_datasets(args: argparse.Namespace) -> List[Tuple[Dataset, Dataset]]:
    pairs: List[Tuple[str, str]] = []
    train_files, test_files = args.train or [], args.test or []
    if len(train_files) != len(test_files):
        raise InvalidParamsError("--train and --test must be given the same number of times")
    pairs.extend(zip(train_files, test_files))
    names = [part.strip() for part in (args.datasets or "").split(",") if part.strip()]
    if names:
        root = args.ucr_root or get_settings().ucr_root
        if not root:
            raise InvalidParamsError("--datasets needs --ucr-root or TSAUG_UCR_ROOT")
        for name in names:
            folder = Path(root) / name
            pairs.append((str(folder / f"{name}_TRAIN.tsv"), str(folder / f"{name}_TEST.tsv")))
    if not pairs:
        raise InvalidParamsError("bench needs --train/--test pairs or --datasets")
    return [(load_ucr_tsv(train, SplitEnum.TRAIN), load_ucr_tsv(test, SplitEnum.TEST))
            for train, test in pairs]


def run_bench(args: argparse.Namespace) -> int:
    methods = select_methods(args.methods, args.exclude)
    config = bench_service.BenchConfig(
        methods=methods,
        classifier=ClassifierEnum(args.classifier),
        window_fraction=args.window,
        factor=args.factor,
        seed=resolve_seed(args.seed),
        params=parse_param_overrides(args.param),
        jobs=args.jobs,
    )
    datasets = _bench_datasets(args)
    run_info = config.run_info()

    if args.store:
        from sqlmodel import Session
        from .database import create_db_and_tables, engine

        create_db_and_tables()
        with Session(engine) as session:
            results = bench_service.run_benchmark(datasets, config, session=session,
                                                  progress=not args.no_progress)
    else:
        results = bench_service.run_benchmark(datasets, config, progress=not args.no_progress)

    written = bench_service.emit_reports(results, args.report, run_info)
    logger.info("✅ %d evaluations over %d dataset(s); reports in %s",
                len(results), len(datasets), written[0].parent)
    return EXIT_OK


def run_list_methods(args: argparse.Namespace) -> int:
    for info in list_methods():
        print(f"{info.name}\t{info.category.value}\t{info.display_name}")
    return EXIT_OK


def describe_text(dataset: Dataset) -> str:
    summary = dataset_summary(dataset)
    length = summary["length"]
    lines = [f"{summary['items']} items, {summary['classes']} classes, length {length}"]
    if length == "variable":
        lines[0] += f" ({summary['min_length']}-{summary['max_length']})"
    lines.extend(f"  class {label}: {count}" for label, count in summary["class_histogram"].items())
    entry = lookup(dataset.name)
    if entry is not None:
        lines.append(f"catalog: {entry.name} ({entry.type}) train {entry.train_size}, "
                     f"test {entry.test_size}, {entry.classes} classes, "
                     f"length {entry.length if entry.length is not None else 'variable'}")
        lines.extend(f"⚠️ {problem}" for problem in check_against_catalog(dataset))
    return "\n".join(lines)


def run_describe(args: argparse.Namespace) -> int:
    dataset = load_ucr_tsv(args.input, SplitEnum(args.split))
    print(describe_text(dataset))
    return EXIT_OK


# --- Parser ---

def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps the top-level value unless the flag follows the subcommand
    parser.add_argument("--log-level", default=argparse.SUPPRESS, help="logging level (fallback TSAUG_LOG_LEVEL)")
    parser.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker threads; output does not depend on it")


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    _add_common_flags(parser)
    parser.add_argument("--factor", type=int, default=4, help="expansion multiple, originals included")
    parser.add_argument("--seed", type=int, default=None, help="master seed (fallback TSAUG_SEED, then 0)")
    parser.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="dotted parameter override, e.g. sfcc.strata=8 (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="tsaug", description="Time-series augmentation and benchmark")
    parser.add_argument("--log-level", default=None, help="logging level (fallback TSAUG_LOG_LEVEL)")
    parser.add_argument("--jobs", type=int, default=settings.jobs,
                        help="worker threads; output does not depend on it")
    sub = parser.add_subparsers(dest="command", required=True)

    augment = sub.add_parser("augment", help="expand a training split with one method")
    augment.add_argument("--input", default=None, help="training split (overrides the config dataset)")
    augment.add_argument("--method", default=None)
    augment.add_argument("--config", default=None, help="JSON run config {dataset, method, params, factor, seed}")
    augment.add_argument("--output", required=True)
    _add_run_flags(augment)
    augment.set_defaults(handler=run_augment)

    bench = sub.add_parser("bench", help="1-NN benchmark of methods against the baseline")
    bench.add_argument("--train", action="append", help="training split (pair with --test)")
    bench.add_argument("--test", action="append", help="test split")
    bench.add_argument("--ucr-root", default=None, help="archive root holding <Name>/<Name>_TRAIN.tsv")
    bench.add_argument("--datasets", default=None, help="comma separated archive dataset names")
    bench.add_argument("--methods", default="all", help="'all' or comma separated identifiers")
    bench.add_argument("--exclude", default=None, help="comma separated identifiers to skip")
    bench.add_argument("--classifier", choices=[c.value for c in ClassifierEnum], default="dtw")
    bench.add_argument("--window", type=float, default=0.1, help="DTW band as a fraction of length")
    bench.add_argument("--report", required=True, help="report directory")
    bench.add_argument("--store", action="store_true", help="persist results to the results database")
    bench.add_argument("--no-progress", action="store_true")
    _add_run_flags(bench)
    bench.set_defaults(handler=run_bench)

    methods = sub.add_parser("list-methods", help="print the method registry")
    _add_common_flags(methods)
    methods.set_defaults(handler=run_list_methods)

    describe = sub.add_parser("describe", help="summarize a UCR split file")
    describe.add_argument("--input", required=True)
    describe.add_argument("--split", choices=[s.value for s in SplitEnum], default="train")
    _add_common_flags(describe)
    describe.set_defaults(handler=run_describe)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    if args.jobs < 1:
        logger.error("❌ --jobs must be >= 1")
        return EXIT_INVALID_PARAMS
    try:
        return args.handler(args)
    except UnknownMethodError as exc:
        logger.error("❌ %s", exc)
        return EXIT_UNKNOWN_METHOD
    except BaselineExcluded as exc:
        logger.error("❌ %s", exc)
        return EXIT_BASELINE_EXCLUDED
    except (InvalidParamsError, ValidationError) as exc:
        logger.error("❌ %s", exc)
        return EXIT_INVALID_PARAMS
    except (DatasetFormatError, OSError) as exc:
        logger.error("❌ %s", exc)
        return EXIT_IO
    except TsaugError as exc:
        logger.error("❌ %s", exc)
        return EXIT_UNEXPECTED
    except Exception:
        logger.exception("❌ Unexpected failure")
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
