"""Real-signal DFT helpers and stratified Fourier coefficient combination."""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..exceptions import SpectrumError
from ..models import TimeSeries, as_series
from .random_service import RandomStream

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class HalfSpectrum:
    """Non-redundant DFT bins 0..n//2 of a real series of length n."""
    coeffs: np.ndarray
    n: int

    @property
    def bins(self) -> int:
        return self.coeffs.shape[0]


def rdft(x: TimeSeries) -> HalfSpectrum:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape[0] < 1:
        raise ValueError("rdft needs at least one sample")
    coeffs = np.fft.rfft(arr)
    coeffs.setflags(write=False)
    return HalfSpectrum(coeffs=coeffs, n=int(arr.shape[0]))


def _check_symmetry(spectrum: HalfSpectrum) -> None:
    expected = spectrum.n // 2 + 1
    if spectrum.bins != expected:
        raise SpectrumError(f"length {spectrum.n} needs {expected} bins, got {spectrum.bins}")
    scale = max(1.0, float(np.max(np.abs(spectrum.coeffs))))
    if abs(spectrum.coeffs[0].imag) > SYMMETRY_TOL * scale:
        raise SpectrumError("DC bin must be real")
    if spectrum.n % 2 == 0 and abs(spectrum.coeffs[-1].imag) > SYMMETRY_TOL * scale:
        raise SpectrumError("Nyquist bin must be real for even lengths")


def irdft(spectrum: HalfSpectrum) -> TimeSeries:
    _check_symmetry(spectrum)
    return as_series(np.fft.irfft(spectrum.coeffs, n=spectrum.n))


def band_edges(bins: int, strata: int) -> List[Tuple[int, int]]:
    """Contiguous equal-width bands; the remainder joins the last band."""
    strata = min(strata, bins)
    width = bins // strata
    edges = [(k * width, (k + 1) * width) for k in range(strata)]
    edges[-1] = (edges[-1][0], bins)
    return edges


def assemble_spectrum(first: HalfSpectrum, second: HalfSpectrum, strata: int,
                      stream: RandomStream) -> Tuple[HalfSpectrum, List[int]]:
    """Take each band whole from a uniformly chosen parent."""
    coeffs = np.empty_like(first.coeffs)
    picks = []
    for lo, hi in band_edges(first.bins, strata):
        parent = int(stream.integers(0, 2))
        picks.append(parent)
        coeffs[lo:hi] = (first if parent == 0 else second).coeffs[lo:hi]
    return HalfSpectrum(coeffs=coeffs, n=first.n), picks


def sfcc(x1: TimeSeries, x2: TimeSeries, strata: int, stream: RandomStream) -> TimeSeries:
    if len(x1) != len(x2):
        raise ValueError(f"SFCC parents differ in length ({len(x1)} vs {len(x2)})")
    if strata < 1:
        raise ValueError("strata must be >= 1")
    first, second = rdft(x1), rdft(x2)
    if strata > first.bins:
        logger.debug("SFCC strata %d capped to %d bins", strata, first.bins)
    spectrum, _ = assemble_spectrum(first, second, strata, stream)
    return irdft(spectrum)
