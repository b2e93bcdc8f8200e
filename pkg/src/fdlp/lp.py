"""Linear prediction by the autocorrelation method, complex-capable throughout.

The recursion, the model container, and the all-pole response live here. Real
signals are a special case of the same code path (their models come out with
real coefficients up to rounding); there is no separate real implementation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.fft

from .errors import DegenerateSignalError, IllConditionedError, NumericError

DOMAINS = ("raw", "conventional_fdlp", "complex_fdlp")

# Conventional models fit a real sequence, so any imaginary residue in their
# coefficients is rounding noise; above this it is a bug.
_CONVENTIONAL_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class LpModel:
    """All-pole model ``H(z) = gain / (1 - sum_k coeffs[k-1] z^-k)``.

    ``coeffs`` holds alpha_1..alpha_p as complex values. ``domain`` records
    which construction produced the model; ``source_len`` the length of the
    fitted sequence and ``duration_s`` the physical span of the model's time
    response (twice the signal duration for conventional models, which fit an
    even-symmetric target). ``order_clamped`` marks a requested order that was
    reduced to fit the available data.
    """

    coeffs: np.ndarray
    gain: float
    order: int
    domain: str = "raw"
    source_len: int | None = None
    duration_s: float | None = None
    order_clamped: bool = False

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.ndim != 1 or len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got shape {coeffs.shape}")
        object.__setattr__(self, "coeffs", coeffs)
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if not self.gain > 0:
            raise ValueError(f"gain must be positive, got {self.gain}")
        if self.domain not in DOMAINS:
            raise ValueError(f"domain must be one of {DOMAINS}, got {self.domain!r}")
        if self.source_len is not None and self.source_len < 1:
            raise ValueError("source_len must be >= 1")
        if self.duration_s is not None and not self.duration_s > 0:
            raise ValueError("duration_s must be positive")
        if self.domain == "conventional_fdlp" and self.order > 0:
            worst = float(np.max(np.abs(coeffs.imag)))
            if worst >= _CONVENTIONAL_IMAG_TOL:
                raise ValueError(
                    f"conventional model coefficients must be real; "
                    f"max |imag| = {worst:.3e}"
                )


def autocorrelate(x: Sequence[complex] | np.ndarray, max_lag: int) -> np.ndarray:
    """Autocorrelation ``r[k] = sum_n x[n] * conj(x[n-k])`` for k = 0..max_lag.

    Computed via FFT in O(N log N). ``r[0]`` is forced exactly real. Always
    returns a complex array; for real input the imaginary parts are rounding
    noise.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = len(x)
    if n == 0:
        raise ValueError("autocorrelate requires a non-empty input")
    if not 0 <= max_lag < n:
        raise ValueError(f"max_lag must lie in [0, {n - 1}], got {max_lag}")
    nfft = scipy.fft.next_fast_len(2 * n - 1, real=False)
    spectrum = np.fft.fft(x, nfft)
    r = np.fft.ifft(spectrum * np.conj(spectrum))[: max_lag + 1]
    r[0] = r[0].real
    return r


def _levinson_core(r: np.ndarray, order: int) -> tuple[np.ndarray, float, np.ndarray]:
    """Shared recursion: returns (coeffs, final prediction error, reflections)."""
    r0 = float(r[0].real)
    if r0 <= 0:
        raise DegenerateSignalError(
            f"signal has no usable energy (zero-lag autocorrelation = {r0:.3e})"
        )
    a = np.zeros(order, dtype=np.complex128)
    ks = np.zeros(order, dtype=np.complex128)
    e = r0
    for m in range(1, order + 1):
        head = a[: m - 1]
        delta = r[m] - np.dot(head, r[m - 1 : 0 : -1])
        k = delta / e
        a[: m - 1] = head - k * np.conj(head[::-1])
        a[m - 1] = k
        ks[m - 1] = k
        e *= 1.0 - abs(k) ** 2
        if e <= 0:
            raise IllConditionedError(m, e)
    return a, e, ks


def _check_r(r: Sequence[complex] | np.ndarray, order: int) -> np.ndarray:
    r = np.asarray(r, dtype=np.complex128)
    if order < 0:
        raise ValueError("order must be >= 0")
    if len(r) < order + 1:
        raise ValueError(f"need autocorrelation lags 0..{order}, got {len(r)} values")
    if abs(r[0].imag) > 1e-8 * max(1.0, abs(r[0])):
        raise ValueError(f"r[0] must be real, got imaginary part {r[0].imag:.3e}")
    return r


def levinson(
    r: Sequence[complex] | np.ndarray,
    order: int,
    *,
    domain: str = "raw",
    source_len: int | None = None,
    duration_s: float | None = None,
    order_clamped: bool = False,
) -> LpModel:
    """Solve the normal equations for an order-``p`` predictor in O(p^2).

    ``r`` must supply lags 0..order of a positive-definite autocorrelation.
    Raises :class:`DegenerateSignalError` for zero energy and
    :class:`IllConditionedError` when the prediction error collapses to zero
    or below (perfectly predictable input, excessive order).
    """
    r = _check_r(r, order)
    a, e, _ = _levinson_core(r, order)
    return LpModel(
        coeffs=a,
        gain=float(np.sqrt(e)),
        order=order,
        domain=domain,
        source_len=source_len,
        duration_s=duration_s,
        order_clamped=order_clamped,
    )


def reflection_coefficients(r: Sequence[complex] | np.ndarray, order: int) -> np.ndarray:
    """Reflection coefficients k_1..k_p of the recursion; all |k| < 1 when it succeeds."""
    r = _check_r(r, order)
    _, _, ks = _levinson_core(r, order)
    return ks


def lp_power_response(model: LpModel, n_points: int) -> np.ndarray:
    """Power response ``gain^2 / |A|^2`` on a uniform n-point frequency grid.

    The grid must resolve the predictor polynomial: ``n_points >= order + 1``.
    Raises :class:`NumericError` if a grid point lands on a pole.
    """
    if n_points < model.order + 1:
        raise ValueError(
            f"n_points must be >= order + 1 = {model.order + 1}, got {n_points}"
        )
    a = np.zeros(n_points, dtype=np.complex128)
    a[0] = 1.0
    if model.order > 0:
        a[1 : model.order + 1] = -model.coeffs
    denom = np.abs(np.fft.fft(a)) ** 2
    with np.errstate(divide="ignore", over="ignore"):
        response = model.gain**2 / denom
    if not np.all(np.isfinite(response)):
        raise NumericError(
            "all-pole response is non-finite on the evaluation grid; "
            "a pole lies on (or underflows onto) a grid point"
        )
    return response


def poles(model: LpModel, *, residual_tol: float = 1e-10, max_polish: int = 10) -> np.ndarray:
    """Roots of ``z^p - alpha_1 z^(p-1) - ... - alpha_p`` (diagnostic use).

    Companion-matrix roots refined by Newton steps until the normalized
    residual |P(z)| / sum_j |c_j||z|^j drops below ``residual_tol``. Raises
    :class:`NumericError` if refinement stalls above the tolerance.
    """
    if model.order < 1:
        raise ValueError("pole extraction requires order >= 1")
    poly = np.concatenate(([1.0 + 0.0j], -model.coeffs))
    roots = np.roots(poly)
    dpoly = np.polyder(poly)
    abs_poly = np.abs(poly)

    def norm_residual(z: np.ndarray) -> np.ndarray:
        scale = np.polyval(abs_poly, np.abs(z))
        return np.abs(np.polyval(poly, z)) / np.maximum(scale, np.finfo(float).tiny)

    res = norm_residual(roots)
    for _ in range(max_polish):
        bad = res > residual_tol
        if not np.any(bad):
            break
        z = roots[bad]
        dp = np.polyval(dpoly, z)
        step = np.where(dp != 0, np.polyval(poly, z) / np.where(dp != 0, dp, 1.0), 0.0)
        roots[bad] = z - step
        res = norm_residual(roots)
    worst = float(np.max(res))
    if worst > residual_tol:
        raise NumericError(
            f"pole refinement stalled with normalized residual {worst:.3e} "
            f"(tolerance {residual_tol:.1e})"
        )
    return roots
