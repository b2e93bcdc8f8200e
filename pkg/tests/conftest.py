"""Shared fixtures and signal builders for the test suite."""

import numpy as np
import pytest

from fdlp.dsp import AmComponent, AmSignalSpec, Signal, synth_am


def make_am_signal(
    mods=((5.0, 0.1, 0.0),),
    carrier_hz=1000.0,
    duration_s=1.0,
    sample_rate=8000.0,
) -> Signal:
    """Amplitude-modulated sinusoid with the given (freq, depth, phase) triples."""
    components = tuple(AmComponent(f, d, p) for f, d, p in mods)
    spec = AmSignalSpec(
        carrier_hz=carrier_hz,
        components=components,
        duration_s=duration_s,
        sample_rate=sample_rate,
    )
    return synth_am(spec)


def make_speech_like(seed: int, n: int, sample_rate: float = 16000.0) -> Signal:
    """Broadband noise with a low-frequency spectral tilt and slow AM.

    A rough stand-in for voiced speech: energy concentrated at low
    frequencies, with a syllable-rate amplitude contour.
    """
    rng = np.random.default_rng(seed)
    white = rng.standard_normal(n)
    spectrum = np.fft.rfft(white)
    freqs = np.fft.rfftfreq(n, d=1.0 / sample_rate)
    spectrum /= np.sqrt(1.0 + freqs / 200.0)
    shaped = np.fft.irfft(spectrum, n)
    t = np.arange(n) / sample_rate
    contour = 1.0 - 0.5 * np.cos(2.0 * np.pi * 4.0 * t)
    samples = shaped * contour
    samples /= np.std(samples)
    return Signal(samples=samples, sample_rate=sample_rate)


@pytest.fixture
def am_signal() -> Signal:
    """1 kHz carrier, 5 Hz modulator at depth 0.1, 1 s at 8 kHz."""
    return make_am_signal()


@pytest.fixture
def speech_like() -> Signal:
    """1.5 s of speech-shaped modulated noise at 16 kHz."""
    return make_speech_like(seed=7, n=24000, sample_rate=16000.0)
