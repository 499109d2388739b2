import math

import numpy as np
import pytest

from app.exceptions import DatasetFormatError
from app.models import Dataset, LabeledSeries, NormalizationParams, SplitEnum, as_series
from app.services.catalog_service import archive_catalog, check_against_catalog, lookup
from app.services.random_service import RandomStream
from app.services.series_service import (
    apply_normalizer, dataset_name_from_path, dataset_summary, fit_normalizer, linear_resample,
    load_ucr_tsv, normalize_splits, parse_ucr_text, sanitize, sanitize_dataset, smooth_random_curve,
    write_ucr_tsv
)

from .conftest import make_cbf


def _dataset(*rows, name="toy"):
    return Dataset.from_items(name, SplitEnum.TRAIN,
                              [LabeledSeries(series=as_series(v), label=l) for l, v in rows])


# --- Loading ---

def test_load_tab_separated(cbf_files):
    train = load_ucr_tsv(cbf_files[0])
    assert train.name == "CBF"
    assert len(train) == 30
    assert train.classes == ("1", "2", "3")
    assert train.fixed_length == 128


def test_single_whitespace_line():
    dataset = parse_ucr_text("1 0.0 1.0\n", "one")
    assert len(dataset) == 1
    assert dataset.classes == ("1",)
    assert dataset.fixed_length == 2


def test_comma_fallback_and_missing_markers():
    dataset = parse_ucr_text("a,1.0,NaN,3.0\nb,2,,4\n", "csv")
    assert dataset.fixed_length == 3
    assert math.isnan(dataset.items[0].series[1])
    assert math.isnan(dataset.items[1].series[1])


def test_trailing_missing_values_become_zero_in_fixed_length_files():
    raw = parse_ucr_text("1\t1.0\t2.0\tNaN\n1\t4.0\t5.0\t6.0\n", "fixed")
    dataset = sanitize_dataset(raw)
    assert dataset.fixed_length == 3
    np.testing.assert_array_equal(dataset.items[0].series, [1.0, 2.0, 0.0])


def test_all_missing_row_is_zeros():
    dataset = sanitize_dataset(parse_ucr_text("1\tNaN\tNaN\n2\t1.0\t2.0\n", "blank"))
    np.testing.assert_array_equal(dataset.items[0].series, [0.0, 0.0])
    assert dataset.fixed_length == 2


def test_variable_length_sets_strip_trailing_padding():
    text = "1\t1\t2\t3\n2\t4\t5\tNaN\tNaN\n"
    explicit = parse_ucr_text(text, "vary", variable_length=True)
    assert explicit.fixed_length is None
    assert explicit.lengths == [3, 2]
    from_catalog = parse_ucr_text(text, "GestureMidAirD1")
    assert from_catalog.lengths == [3, 2]
    with pytest.raises(DatasetFormatError):
        parse_ucr_text("1\tNaN\tNaN\n", "vary", variable_length=True)


def test_numeric_labels_sort_numerically():
    dataset = parse_ucr_text("10\t1\t2\n2\t1\t2\n1\t3\t4\n", "labels")
    assert dataset.classes == ("1", "2", "10")


@pytest.mark.parametrize("text", ["", "\n\n", "1\tabc\t2\n"])
def test_malformed_input_raises(text):
    with pytest.raises(DatasetFormatError):
        parse_ucr_text(text, "bad")


def test_unreadable_path_raises(tmp_path):
    with pytest.raises(DatasetFormatError):
        load_ucr_tsv(tmp_path / "missing_TRAIN.tsv")


def test_dataset_name_from_path():
    assert dataset_name_from_path("/data/ECG5000/ECG5000_TRAIN.tsv") == "ECG5000"
    assert dataset_name_from_path("cbf_test.tsv") == "cbf"


def test_write_then_read_preserves_values(tmp_path):
    dataset = _dataset(("1", [0.1, 1 / 3, -2.5e-7]), ("2", [math.pi, 1e300, -0.0]))
    path = tmp_path / "out.tsv"
    write_ucr_tsv(dataset, path)
    back = load_ucr_tsv(path)
    for a, b in zip(dataset.items, back.items):
        assert a.label == b.label
        np.testing.assert_array_equal(a.series, b.series)


def test_dataset_rejects_foreign_labels():
    with pytest.raises(ValueError):
        Dataset(name="x", split=SplitEnum.TRAIN,
                items=(LabeledSeries(series=as_series([1.0]), label="b"),), classes=("a",))


# --- Sanitize and normalization ---

def test_sanitize_examples():
    np.testing.assert_array_equal(sanitize([1.0, math.nan, 3.0]), [1.0, 0.0, 3.0])
    np.testing.assert_array_equal(sanitize([1.0, 2.0]), [1.0, 2.0])
    np.testing.assert_array_equal(sanitize([math.nan, math.inf]), [0.0, 0.0])
    x = sanitize([math.nan, -math.inf, 2.0])
    np.testing.assert_array_equal(sanitize(x), x)


def test_fit_normalizer_pools_every_series():
    params = fit_normalizer(_dataset(("1", [-2.0, 0.0]), ("2", [0.0, 4.0])))
    assert (params.train_min, params.train_max) == (-2.0, 4.0)


def test_apply_normalizer_examples():
    params = NormalizationParams(train_min=0.0, train_max=10.0)
    np.testing.assert_array_equal(apply_normalizer(as_series([0, 5, 10]), params), [-1, 0, 1])
    flat = NormalizationParams(train_min=5.0, train_max=5.0)
    np.testing.assert_array_equal(apply_normalizer(as_series([5.0, 5.0]), flat), [0.0, 0.0])


def test_normalizer_rejects_inverted_extrema():
    with pytest.raises(ValueError):
        NormalizationParams(train_min=1.0, train_max=0.0)


def test_normalize_splits_maps_train_extrema(cbf_train, cbf_test):
    train, test, params = normalize_splits(cbf_train, cbf_test)
    pooled = np.concatenate([item.series for item in train.items])
    assert abs(pooled.min() + 1.0) < 1e-12
    assert abs(pooled.max() - 1.0) < 1e-12
    # the test split reuses the training extrema
    raw = cbf_test.items[0].series
    expected = 2.0 * (raw - params.train_min) / (params.train_max - params.train_min) - 1.0
    np.testing.assert_allclose(test.items[0].series, expected, rtol=0, atol=1e-12)


# --- Resampling and smooth curves ---

def test_linear_resample_examples():
    np.testing.assert_allclose(linear_resample(as_series([0, 1]), 3), [0, 0.5, 1])
    np.testing.assert_array_equal(linear_resample(as_series([0, 2, 4, 6]), 2), [0, 6])
    x = as_series([3.0, -1.0, 2.0])
    np.testing.assert_array_equal(linear_resample(x, 3), x)
    with pytest.raises(ValueError):
        linear_resample(x, 0)


def test_linear_resample_is_exact_on_progressions():
    ramp = as_series(np.arange(10) * 0.5 + 1.0)
    out = linear_resample(ramp, 23)
    np.testing.assert_allclose(np.diff(out), np.full(22, 4.5 / 22), atol=1e-12)
    assert out[0] == 1.0 and out[-1] == 5.5


def test_smooth_random_curve_zero_sigma_is_ones():
    curve = smooth_random_curve(50, 4, 0.0, RandomStream(1, (0, 0, "t")))
    np.testing.assert_array_equal(curve, np.ones(50))


def test_smooth_random_curve_is_reproducible():
    a = smooth_random_curve(64, 4, 0.2, RandomStream(9, (3, 1, "magnitude_warp")))
    b = smooth_random_curve(64, 4, 0.2, RandomStream(9, (3, 1, "magnitude_warp")))
    np.testing.assert_array_equal(a, b)


def test_anchor_spread_matches_sigma():
    draws = np.concatenate([RandomStream(5, (k, 0, "anchors")).normal(1.0, 0.2, size=6)
                            for k in range(20000)])
    assert abs(draws.std() - 0.2) / 0.2 < 0.02


# --- Summary and archive catalog ---

def test_dataset_summary_reports_fixed_length(cbf_train):
    summary = dataset_summary(cbf_train)
    assert summary["items"] == 30
    assert summary["classes"] == 3
    assert summary["length"] == 128
    assert summary["class_histogram"] == {"1": 10, "2": 10, "3": 10}


def test_dataset_summary_variable_length():
    summary = dataset_summary(_dataset(("1", [1.0, 2.0]), ("2", [1.0, 2.0, 3.0])))
    assert summary["length"] == "variable"
    assert (summary["min_length"], summary["max_length"]) == (2, 3)


def test_archive_catalog_contents():
    catalog = archive_catalog()
    assert len(catalog) == 15
    ecg = lookup("ecg5000")
    assert (ecg.train_size, ecg.test_size, ecg.classes, ecg.length) == (500, 4500, 5, 140)
    assert lookup("GestureMidAirD1").length is None
    assert lookup("Fungi").classes == 18


def test_check_against_catalog(cbf_train):
    assert check_against_catalog(cbf_train) == []
    short = make_cbf(per_class=5, n=100)
    problems = check_against_catalog(short)
    assert any("30" in p for p in problems)
    assert any("128" in p for p in problems)
    assert check_against_catalog(make_cbf(name="NotInArchive")) == []
