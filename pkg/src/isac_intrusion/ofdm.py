"""OFDM baseband symbols: unitary IDFT modulation and its inverse.

The transmit waveform is independent of the RSS pipeline; it is kept here so
the AP side of the link can be exercised on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedLength

DEFAULT_SUBCARRIERS = 64
DEFAULT_SUBCARRIER_SPACING = 312.5e3


def _check_length(n: int) -> None:
    if n < 1 or n & (n - 1):
        raise UnsupportedLength(f"subcarrier count must be a power of two, got {n}")


@dataclass(frozen=True)
class SubcarrierSymbols:
    """Frequency-domain data ``X(k)``, one complex value per subcarrier."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1:
            raise ValueError("subcarrier symbols must be a 1-D vector")
        _check_length(v.size)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class TimeDomainSymbol:
    samples: np.ndarray
    subcarrier_spacing: float = DEFAULT_SUBCARRIER_SPACING

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1:
            raise ValueError("time-domain samples must be a 1-D vector")
        _check_length(s.size)
        if not self.subcarrier_spacing > 0:
            raise ValueError("subcarrier_spacing must be > 0")
        object.__setattr__(self, "samples", s)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def symbol_duration(self) -> float:
        return 1.0 / self.subcarrier_spacing

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))


def ofdm_modulate(x: SubcarrierSymbols, subcarrier_spacing: float = DEFAULT_SUBCARRIER_SPACING) -> TimeDomainSymbol:
    """x(n) = 1/sqrt(N) * sum_k X(k) exp(j 2 pi n k / N)."""
    samples = np.fft.ifft(x.values, norm="ortho")
    return TimeDomainSymbol(samples, subcarrier_spacing)


def ofdm_demodulate(t: TimeDomainSymbol) -> SubcarrierSymbols:
    return SubcarrierSymbols(np.fft.fft(t.samples, norm="ortho"))


def continuous_waveform(x: SubcarrierSymbols, t, subcarrier_spacing: float = DEFAULT_SUBCARRIER_SPACING) -> np.ndarray:
    """Evaluate the unnormalized continuous-time symbol sum_k X(k) exp(j 2 pi k df t).

    ``t`` is in seconds within ``[0, 1/df]``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    k = np.arange(x.n)
    return np.exp(2j * np.pi * subcarrier_spacing * np.outer(t, k)) @ x.values


def random_qpsk(n: int, rng: np.random.Generator) -> SubcarrierSymbols:
    """Unit-energy QPSK symbols on all ``n`` subcarriers."""
    bits = rng.integers(0, 2, size=(n, 2))
    return SubcarrierSymbols(((2 * bits[:, 0] - 1) + 1j * (2 * bits[:, 1] - 1)) / np.sqrt(2))
