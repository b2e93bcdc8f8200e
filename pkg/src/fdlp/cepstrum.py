"""Complex cepstra of all-pole models and modulation spectra built from them.

The cepstrum of ``H(z) = G / A(z)`` is computed two independent ways: a
closed-form recursion on the predictor coefficients (the production path) and
a dense-grid FFT of ``log H`` (the oracle path, used for verification). The
modulation spectrum is the magnitude of the cepstral coefficients placed on a
physical modulation-frequency axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSignalError, NumericError, ResolutionError
from .lp import LpModel, lp_power_response

# Modulation content of interest tops out around 30 Hz; the default number of
# cepstral coefficients covers that band for the model's duration.
_DEFAULT_MAX_MOD_HZ = 30.0

# Phase steps between adjacent grid points approaching pi cannot be unwrapped
# reliably; beyond this fraction the grid is declared too coarse.
_PHASE_STEP_LIMIT = 0.999 * np.pi


@dataclass(frozen=True)
class Cepstrum:
    """Cepstral coefficients ``c[0..M-1]`` of an all-pole model.

    ``c[0] == log(gain)``, real. Later coefficients are complex for complex
    models and real (up to rounding) for conventional ones. ``duration_s``
    carries the source model's time span so coefficient index n maps to
    modulation frequency ``n / duration_s``.
    """

    c: np.ndarray
    source_domain: str
    duration_s: float | None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("cepstrum must be a non-empty one-dimensional array")
        object.__setattr__(self, "c", c)

    def __len__(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class ModulationSpectrum:
    """Cepstral magnitudes on a physical modulation-frequency axis (Hz)."""

    magnitudes: np.ndarray
    freqs_hz: np.ndarray

    def __post_init__(self):
        mags = np.asarray(self.magnitudes, dtype=np.float64)
        freqs = np.asarray(self.freqs_hz, dtype=np.float64)
        if mags.shape != freqs.shape:
            raise ValueError("magnitudes and freqs_hz must have equal length")
        if len(freqs) and (freqs[0] != 0 or np.any(np.diff(freqs) <= 0)):
            raise ValueError("frequency axis must start at 0 and increase strictly")
        object.__setattr__(self, "magnitudes", mags)
        object.__setattr__(self, "freqs_hz", freqs)

    def __len__(self) -> int:
        return len(self.magnitudes)


def cepstral_recursion(model: LpModel, n_coeffs: int) -> Cepstrum:
    """Cepstrum of ``G / A(z)`` by the coefficient recursion, no transforms.

    ``c[0] = log G`` and for n >= 1

        c[n] = alpha_n + (1/n) * sum_{k=1}^{n-1} k * c[k] * alpha_{n-k}

    with ``alpha_n = 0`` beyond the model order. O(M^2) and exact up to
    rounding for a minimum-phase model.
    """
    if n_coeffs < 1:
        raise ValueError(f"n_coeffs must be >= 1, got {n_coeffs}")
    if not model.gain > 0:
        raise DegenerateSignalError(f"model gain must be positive, got {model.gain}")
    alpha = np.zeros(n_coeffs, dtype=np.complex128)
    upto = min(model.order, n_coeffs - 1)
    alpha[1 : upto + 1] = model.coeffs[:upto]
    c = np.zeros(n_coeffs, dtype=np.complex128)
    c[0] = math.log(model.gain)
    weights = np.arange(n_coeffs)
    for n in range(1, n_coeffs):
        acc = alpha[n]
        if n >= 2:
            k = np.arange(1, n)
            acc += np.dot(weights[1:n] * c[1:n], alpha[n - k]) / n
        c[n] = acc
    return Cepstrum(c=c, source_domain=model.domain, duration_s=model.duration_s)


def cepstrum_oracle_fft(model: LpModel, grid: int | None = None) -> Cepstrum:
    """Cepstrum via dense-grid evaluation of ``log H``; verification path.

    Samples ``log G - log A`` on a uniform ``grid``-point circle with
    incremental phase unwrapping and inverse-transforms the samples. The grid
    must be dense enough both to unwrap the phase (adjacent steps must stay
    clearly below pi, else :class:`ResolutionError`) and to make wrap-around
    aliasing negligible: coefficients are reliable only well below ``grid``
    and for poles not too close to the unit circle.
    """
    if grid is None:
        grid = max(4096, 8 * (model.order + 1))
    if grid < 8 * (model.order + 1):
        raise ValueError(f"grid must be >= 8 * (order + 1) = {8 * (model.order + 1)}, got {grid}")
    if not model.gain > 0:
        raise DegenerateSignalError(f"model gain must be positive, got {model.gain}")
    a = np.zeros(grid, dtype=np.complex128)
    a[0] = 1.0
    if model.order > 0:
        a[1 : model.order + 1] = -model.coeffs
    denom = np.fft.fft(a)
    mags = np.abs(denom)
    if not np.all(np.isfinite(mags)) or np.any(mags == 0):
        raise NumericError("predictor polynomial vanishes on the evaluation grid")

    raw_phase = np.angle(denom)
    steps = np.diff(raw_phase)
    steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
    closing = (raw_phase[0] - raw_phase[-1] + np.pi) % (2.0 * np.pi) - np.pi
    if max(np.max(np.abs(steps), initial=0.0), abs(closing)) > _PHASE_STEP_LIMIT:
        raise ResolutionError(
            "adjacent phase samples differ by nearly pi; "
            "use a denser grid to unwrap the response phase"
        )
    phase = np.empty(grid)
    phase[0] = raw_phase[0]
    np.cumsum(steps, out=phase[1:])
    phase[1:] += raw_phase[0]

    winding = phase[-1] + closing - phase[0]
    if abs(winding) > 1e-6:
        raise ResolutionError(
            f"unwrapped phase winds by {winding:.3e} around the circle; "
            "a minimum-phase response must close on itself (denser grid needed)"
        )
    # A(z) = 1 + ... is monic with all roots inside the circle, so the mean of
    # log A over the circle is log A(inf) = 0; that pins the 2*pi branch of
    # the starting angle.
    phase -= 2.0 * np.pi * np.round(np.mean(phase) / (2.0 * np.pi))

    log_h = math.log(model.gain) - (np.log(mags) + 1j * phase)
    c = np.fft.ifft(log_h)
    return Cepstrum(c=c, source_domain=model.domain, duration_s=model.duration_s)


def modulation_spectrum(model: LpModel, n_coeffs: int | None = None) -> ModulationSpectrum:
    """Cepstral-magnitude modulation spectrum of an envelope model.

    Coefficient n sits at ``n / duration_s`` Hz, where ``duration_s`` is the
    span of the model's time response (twice the signal duration for
    conventional models, the duration itself for complex ones). The default
    coefficient count covers modulations up to 30 Hz.
    """
    if model.duration_s is None:
        raise ValueError("model lacks a duration; fit it through an FDLP construction")
    if n_coeffs is None:
        n_coeffs = int(np.ceil(_DEFAULT_MAX_MOD_HZ * model.duration_s)) + 1
    cep = cepstral_recursion(model, n_coeffs)
    freqs = np.arange(n_coeffs) / model.duration_s
    return ModulationSpectrum(magnitudes=np.abs(cep.c), freqs_hz=freqs)


def modulation_spectrum_direct(model: LpModel, n_points: int | None = None) -> ModulationSpectrum:
    """Modulation spectrum without cepstra: transform of the log envelope.

    Evaluates the model's power response, takes the log, and returns one-sided
    spectrum magnitudes of that log envelope. For conventional models only the
    first (causal) half of the mirrored response is analyzed so the axis
    matches the signal duration. Cross-check for the cepstral path: peak
    locations agree; absolute magnitudes follow different conventions.
    """
    if model.domain not in ("conventional_fdlp", "complex_fdlp"):
        raise ValueError(
            f"direct modulation spectrum requires an FDLP model, got domain {model.domain!r}"
        )
    if model.source_len is None or model.duration_s is None:
        raise ValueError("model lacks source metadata; cannot place a frequency axis")
    if n_points is None:
        n_points = 2 * model.source_len if model.domain == "conventional_fdlp" else model.source_len
    response = lp_power_response(model, n_points)
    if model.domain == "conventional_fdlp":
        response = response[: n_points // 2]
        span_s = model.duration_s / 2.0
    else:
        span_s = model.duration_s
    log_env = np.log(response)
    spectrum = np.fft.fft(log_env) / len(log_env)
    n_keep = len(log_env) // 2 + 1
    freqs = np.arange(n_keep) / span_s
    return ModulationSpectrum(magnitudes=np.abs(spectrum[:n_keep]), freqs_hz=freqs)
