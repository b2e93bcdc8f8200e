"""Paired timing of the two envelope-model constructions.

Both methods fit the same seeded speech-shaped noise signals, one signal at a
time, wall-clock timed per fit with warmup excluded. The headline number is
the percentage reduction of the complex route's mean fit time relative to the
conventional route at its stated order.
"""

from __future__ import annotations

import platform
import sys
import time
from dataclasses import dataclass

import numpy as np

from .dsp import Signal
from .models import complex_fdlp, conventional_fdlp

# Spectral tilt knee for the synthetic signals: flat below ~200 Hz, falling
# ~3 dB/octave above, a crude long-term speech spectrum.
_TILT_KNEE_HZ = 200.0


@dataclass(frozen=True)
class MethodTiming:
    """Per-method timing summary: model order and per-fit wall-clock stats."""

    order: int
    mean_ms: float
    std_ms: float

    def to_dict(self) -> dict:
        return {"order": self.order, "mean_ms": self.mean_ms, "std_ms": self.std_ms}


@dataclass(frozen=True)
class BenchReport:
    """Outcome of one paired benchmark run."""

    n_signals: int
    duration_s: float
    conventional: MethodTiming
    complex: MethodTiming
    reduction_pct: float
    host: str

    def __post_init__(self):
        if self.n_signals < 1:
            raise ValueError("n_signals must be >= 1")
        if not (self.conventional.mean_ms > 0 and self.complex.mean_ms > 0):
            raise ValueError("mean fit times must be positive")

    def to_dict(self) -> dict:
        return {
            "n_signals": self.n_signals,
            "duration_s": self.duration_s,
            "conventional": self.conventional.to_dict(),
            "complex": self.complex.to_dict(),
            "reduction_pct": self.reduction_pct,
            "host": self.host,
        }


def speech_shaped_noise(n: int, sample_rate: float, rng: np.random.Generator) -> Signal:
    """Seeded pink-like noise: white noise tilted toward low frequencies."""
    white = rng.standard_normal(n)
    spectrum = np.fft.rfft(white)
    freqs = np.fft.rfftfreq(n, 1.0 / sample_rate)
    shaped = np.fft.irfft(spectrum / np.sqrt(1.0 + freqs / _TILT_KNEE_HZ), n)
    return Signal(samples=shaped / np.std(shaped), sample_rate=sample_rate)


def _host_descriptor() -> str:
    return (
        f"{platform.platform()} | Python {platform.python_version()} | "
        f"numpy {np.__version__}"
    )


def run_benchmark(
    n_signals: int = 5000,
    duration_s: float = 1.5,
    conv_order: int = 300,
    cplx_order: int = 150,
    seed: int = 0,
    *,
    sample_rate: float = 16000.0,
    warmup: int = 3,
) -> BenchReport:
    """Time both constructions over the same signals, paired per iteration.

    Signal generation is excluded from the timed region; the first ``warmup``
    iterations run both fits untimed to absorb allocator and FFT-plan
    startup. Same seed, same signals; timings vary with the host.
    """
    if n_signals < 1:
        raise ValueError("n_signals must be >= 1")
    if duration_s <= 0:
        raise ValueError("duration_s must be positive")
    n = int(round(duration_s * sample_rate))
    if not 0 <= conv_order < n or not 0 <= cplx_order < n:
        raise ValueError(f"orders must lie in [0, {n - 1}]")

    warm_rng = np.random.default_rng(seed + 1)
    for _ in range(warmup):
        x = speech_shaped_noise(n, sample_rate, warm_rng)
        conventional_fdlp(x, conv_order)
        complex_fdlp(x, cplx_order)

    rng = np.random.default_rng(seed)
    conv_ms = np.empty(n_signals)
    cplx_ms = np.empty(n_signals)
    for i in range(n_signals):
        x = speech_shaped_noise(n, sample_rate, rng)
        t0 = time.perf_counter()
        conventional_fdlp(x, conv_order)
        t1 = time.perf_counter()
        complex_fdlp(x, cplx_order)
        t2 = time.perf_counter()
        conv_ms[i] = (t1 - t0) * 1e3
        cplx_ms[i] = (t2 - t1) * 1e3

    conventional = MethodTiming(conv_order, float(conv_ms.mean()), float(conv_ms.std()))
    cplx = MethodTiming(cplx_order, float(cplx_ms.mean()), float(cplx_ms.std()))
    reduction = 100.0 * (1.0 - cplx.mean_ms / conventional.mean_ms)
    return BenchReport(
        n_signals=n_signals,
        duration_s=duration_s,
        conventional=conventional,
        complex=cplx,
        reduction_pct=reduction,
        host=_host_descriptor(),
    )


def format_report(report: BenchReport) -> str:
    """Human-readable multi-line rendering of a report."""
    lines = [
        f"paired envelope-fit benchmark: {report.n_signals} signals x {report.duration_s} s",
        f"  conventional (order {report.conventional.order}): "
        f"{report.conventional.mean_ms:.3f} ms/fit (std {report.conventional.std_ms:.3f})",
        f"  complex      (order {report.complex.order}): "
        f"{report.complex.mean_ms:.3f} ms/fit (std {report.complex.std_ms:.3f})",
        f"  reduction: {report.reduction_pct:.1f}%",
        f"  host: {report.host}",
    ]
    return "\n".join(lines)
