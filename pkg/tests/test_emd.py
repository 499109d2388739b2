import time

import numpy as np
import pytest

from app.models import EmdParams, as_series
from app.services.emd_service import (
    ImfSet, emd, emd_augment, find_extrema, imf_ordering_violations, is_imf,
    leading_imfs, zero_crossings
)


def test_find_extrema_examples():
    maxima, minima = find_extrema([0, 1, 0, 1, 0])
    assert maxima.tolist() == [1, 3]
    assert minima.tolist() == [2]

    t = np.arange(64) / 64
    maxima, minima = find_extrema(np.sin(2 * np.pi * 2 * t))
    assert len(maxima) == 2 and len(minima) == 2

    maxima, minima = find_extrema(np.arange(20.0))
    assert maxima.size == 0 and minima.size == 0


def test_plateau_counts_once():
    maxima, minima = find_extrema([0, 2, 2, 2, 0, -1, 0])
    assert maxima.tolist() == [2]
    assert minima.tolist() == [5]


def test_zero_crossings_skip_exact_zeros():
    assert zero_crossings([1.0, 0.0, -1.0, 0.0, 1.0]) == 2
    assert zero_crossings([1.0, 2.0, 3.0]) == 0


def test_monotone_series_has_no_imfs():
    x = as_series(np.linspace(-1, 1, 50) ** 3)
    imf_set = emd(x)
    assert imf_set.imfs == ()
    np.testing.assert_array_equal(imf_set.residual, x)
    np.testing.assert_array_equal(emd_augment(x), x)


def test_emd_rejects_short_series():
    with pytest.raises(ValueError):
        emd(as_series([1.0, 2.0, 3.0]))


def test_reconstruction_is_exact_on_random_signals():
    rng = np.random.default_rng(3)
    started = time.perf_counter()
    for _ in range(100):
        x = rng.normal(size=int(rng.integers(32, 257))).cumsum()
        imf_set = emd(as_series(x))
        scale = max(float(np.ptp(x)), 1.0)
        assert np.max(np.abs(imf_set.reconstruct() - x)) < 1e-6 * scale
        assert len(imf_set.imfs) <= 10
    assert time.perf_counter() - started < 30.0


def _mixed_tones(rng, n=128):
    t = np.arange(n) / n
    x = rng.normal(0.0, 0.1, size=n)
    for _ in range(int(rng.integers(2, 5))):
        x += rng.uniform(0.2, 2.0) * np.sin(2 * np.pi * rng.uniform(1.0, 20.0) * t + rng.uniform(0, 2 * np.pi))
    return x


def test_mixed_tones_reconstruct_and_yield_imfs():
    rng = np.random.default_rng(128)
    started = time.perf_counter()
    accepted, failing = 0, 0
    for _ in range(100):
        x = _mixed_tones(rng)
        imf_set = emd(as_series(x))
        assert np.max(np.abs(imf_set.reconstruct() - x)) < 1e-6 * float(np.ptp(x))
        accepted += len(imf_set.imfs)
        failing += sum(not is_imf(imf) for imf in imf_set.imfs)
    assert time.perf_counter() - started < 30.0
    assert accepted >= 100
    assert failing <= 0.05 * accepted


def test_imf_ordering_violations_counts_rising_zero_crossings():
    imfs = tuple(as_series(v) for v in (
        [1, -1, -1, -1, -1],   # 1 crossing
        [1, -1, 1, -1, -1],    # 3
        [1, -1, 1, 1, 1],      # 2
        [1, -1, 1, -1, 1],     # 4
    ))
    imf_set = ImfSet(imfs=imfs, residual=as_series(np.zeros(5)))
    assert imf_ordering_violations(imf_set) == 2
    assert imf_ordering_violations(ImfSet(imfs=imfs[1:3], residual=as_series(np.zeros(5)))) == 0
    assert imf_ordering_violations(ImfSet(imfs=(), residual=as_series(np.zeros(5)))) == 0


def test_two_tone_first_imf_tracks_the_fast_tone():
    t = np.linspace(0.0, 1.0, 256)
    fast = np.sin(16 * np.pi * t)
    imf_set = emd(as_series(np.sin(2 * np.pi * t) + fast))
    first = imf_set.imfs[0]
    assert np.corrcoef(first, fast)[0, 1] > 0.9
    assert is_imf(first)


def test_leading_imfs_sums_the_first_k():
    imfs = (as_series([1.0, -1.0, 1.0, -1.0]), as_series([0.5, 0.5, -0.5, -0.5]))
    imf_set = ImfSet(imfs=imfs, residual=as_series([0.0, 0.0, 0.0, 0.0]))
    np.testing.assert_array_equal(leading_imfs(imf_set, 1, imfs[0]), imfs[0])
    np.testing.assert_array_equal(leading_imfs(imf_set, 5, imfs[0]), [1.5, -0.5, 0.5, -1.5])
    # every IMF kept and nothing in the residual gives back the input
    np.testing.assert_array_equal(leading_imfs(imf_set, 2, imfs[0]), imf_set.reconstruct())
    empty = ImfSet(imfs=(), residual=as_series([3.0, 4.0]))
    np.testing.assert_array_equal(leading_imfs(empty, 2, as_series([3.0, 4.0])), [3.0, 4.0])


def test_emd_augment_keeps_length(rng):
    x = as_series(np.sin(np.linspace(0, 12 * np.pi, 90)) + 0.1 * rng.normal(size=90))
    out = emd_augment(x, EmdParams(k=2))
    assert out.shape == x.shape
    assert np.all(np.isfinite(out))
