"""Transform and synthesis primitives.

Unitary DFT pair, orthonormal DCT-II, one-sided-spectrum analytic signal,
Hanning windows, and amplitude-modulated test-signal generators. Everything
else in the package is built on these.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
import scipy.fft


@dataclass(frozen=True)
class Signal:
    """Uniformly sampled real waveform.

    Parameters
    ----------
    samples : array_like
        Real amplitude values (dimensionless).
    sample_rate : float
        Samples per second, > 0.
    """

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("samples must be a one-dimensional sequence")
        object.__setattr__(self, "samples", samples)
        if not self.sample_rate > 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        """Time axis in seconds, starting at 0."""
        return np.arange(len(self.samples)) / self.sample_rate


@dataclass(frozen=True)
class Envelope:
    """Sampled nonnegative time response with a physical time axis.

    ``values`` are power units (signal amplitude squared) for all-pole fits;
    :func:`hilbert_envelope` produces amplitude units (square for power).
    ``symmetric`` marks the full even-symmetric response of a real-coefficient
    model.
    """

    values: np.ndarray
    times: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        times = np.asarray(self.times, dtype=np.float64)
        if values.shape != times.shape:
            raise ValueError("values and times must have equal length")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "times", times)

    def __len__(self) -> int:
        return len(self.values)


class AmComponent(NamedTuple):
    """One sinusoidal envelope component of an AM test signal."""

    mod_freq_hz: float
    depth: float
    phase_deg: float = 0.0


@dataclass(frozen=True)
class AmSignalSpec:
    """Amplitude-modulated tone: ``(1 - sum_i depth_i*cos(2*pi*f_i*t + phase_i)) * sin(2*pi*carrier*t)``.

    Depths must sum below 1 so the envelope stays positive; every modulation
    frequency must lie strictly between 0 and the carrier. Phases are given in
    degrees.
    """

    carrier_hz: float
    components: tuple[AmComponent, ...]
    duration_s: float
    sample_rate: float

    def __post_init__(self):
        comps = tuple(AmComponent(*c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if not self.carrier_hz > 0:
            raise ValueError("carrier_hz must be positive")
        if not self.duration_s > 0:
            raise ValueError("duration_s must be positive")
        if not self.sample_rate > 0:
            raise ValueError("sample_rate must be positive")
        total_depth = sum(c.depth for c in comps)
        if total_depth >= 1.0:
            raise ValueError(
                f"modulation depths sum to {total_depth}; must stay below 1 "
                "so the envelope remains positive"
            )
        for c in comps:
            if c.depth <= 0:
                raise ValueError(f"modulation depth must be positive, got {c.depth}")
            if not 0 < c.mod_freq_hz < self.carrier_hz:
                raise ValueError(
                    f"modulation frequency {c.mod_freq_hz} Hz must lie strictly "
                    f"between 0 and the carrier ({self.carrier_hz} Hz)"
                )


def dft(x: Sequence[complex] | np.ndarray) -> np.ndarray:
    """Unitary forward DFT (1/sqrt(N) scaling)."""
    x = np.asarray(x)
    if x.size == 0:
        raise ValueError("dft requires a non-empty input")
    return np.fft.fft(x, norm="ortho")


def idft(x: Sequence[complex] | np.ndarray) -> np.ndarray:
    """Unitary inverse DFT (1/sqrt(N) scaling); exact inverse of :func:`dft`."""
    x = np.asarray(x)
    if x.size == 0:
        raise ValueError("idft requires a non-empty input")
    return np.fft.ifft(x, norm="ortho")


def dct2(x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Orthonormal type-II DCT. Norm-preserving: ||dct2(x)|| == ||x||."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise ValueError("dct2 requires a non-empty input")
    return scipy.fft.dct(x, type=2, norm="ortho")


def analytic_signal(x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Analytic signal via the one-sided-spectrum construction.

    DFT, zero the negative frequencies, double the positive ones (DC and
    Nyquist unscaled), inverse DFT. The real part equals the input.
    """
    x = np.asarray(x)
    if np.iscomplexobj(x):
        raise ValueError("analytic_signal requires a real input")
    x = x.astype(np.float64)
    n = x.size
    if n == 0:
        raise ValueError("analytic_signal requires a non-empty input")
    spectrum = np.fft.fft(x)
    weights = np.zeros(n)
    weights[0] = 1.0
    if n % 2 == 0:
        weights[n // 2] = 1.0
        weights[1 : n // 2] = 2.0
    else:
        weights[1 : (n + 1) // 2] = 2.0
    return np.fft.ifft(spectrum * weights)


def hilbert_envelope(signal: Signal) -> Envelope:
    """Magnitude of the analytic signal, on the signal's own time axis."""
    mags = np.abs(analytic_signal(signal.samples))
    return Envelope(values=mags, times=signal.times, symmetric=False)


def hanning(n: int, mode: str = "periodic") -> np.ndarray:
    """Raised-cosine window of length ``n``.

    ``periodic`` windows tile to a constant at 50% hop (overlap-add exact);
    ``symmetric`` windows have exact zero endpoints.
    """
    if n < 2:
        raise ValueError(f"window length must be >= 2, got {n}")
    k = np.arange(n)
    if mode == "periodic":
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * k / n)
    if mode == "symmetric":
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * k / (n - 1))
    raise ValueError(f"mode must be 'periodic' or 'symmetric', got {mode!r}")


def synth_am(spec: AmSignalSpec) -> Signal:
    """Render an AM test signal from its spec.

    Returns ``(1 - sum_i depth_i*cos(2*pi*f_i*t + phase_i)) * sin(2*pi*fc*t)``
    sampled at ``spec.sample_rate`` for ``spec.duration_s`` seconds.
    """
    n = int(round(spec.duration_s * spec.sample_rate))
    t = np.arange(n) / spec.sample_rate
    env = np.ones(n)
    for comp in spec.components:
        phase = np.deg2rad(comp.phase_deg)
        env -= comp.depth * np.cos(2.0 * np.pi * comp.mod_freq_hz * t + phase)
    samples = env * np.sin(2.0 * np.pi * spec.carrier_hz * t)
    return Signal(samples=samples, sample_rate=spec.sample_rate)


def verify_fourier_magnitude_identity(x: Sequence[complex] | np.ndarray) -> float:
    """Max elementwise deviation between |idft(x)| and |dft(x)|.

    Zero (to rounding) for any real input: the inverse transform of a real
    sequence is the conjugate of its forward transform, so the magnitudes
    coincide bin by bin. For a general complex input the two magnitude
    vectors are index-reversed rather than equal, so the returned deviation
    is meaningful only as a diagnostic; see
    :func:`fourier_magnitude_reversal_deviation` for the identity that holds
    unconditionally.
    """
    x = np.asarray(x)
    if x.size == 0:
        raise ValueError("verify_fourier_magnitude_identity requires a non-empty input")
    return float(np.max(np.abs(np.abs(idft(x)) - np.abs(dft(x)))))


def fourier_magnitude_reversal_deviation(x: Sequence[complex] | np.ndarray) -> float:
    """Max deviation between |idft(x)| and the index-reversed |dft(x)|.

    ``idft(x)[k] == dft(x)[(-k) mod N]`` for every sequence, so this is zero
    (to rounding) for arbitrary complex input, with no realness assumption.
    """
    x = np.asarray(x)
    if x.size == 0:
        raise ValueError("fourier_magnitude_reversal_deviation requires a non-empty input")
    forward = np.abs(dft(x))
    inverse = np.abs(idft(x))
    reversed_forward = np.roll(forward[::-1], 1)
    return float(np.max(np.abs(inverse - reversed_forward)))
