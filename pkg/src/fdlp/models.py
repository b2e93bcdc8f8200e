"""Frequency-domain linear prediction: all-pole models of temporal envelopes.

Two constructions, differing only in the transform handed to the predictor:

- conventional: LP of the orthonormal DCT-II of the signal. The model's time
  response approximates the even-symmetrized squared Hilbert envelope, so its
  axis spans twice the signal duration and its coefficients are real.
- complex: LP of the unitary inverse DFT of the signal. The response
  approximates the squared envelope over the signal duration itself, at
  roughly half the order needed by the conventional route.
"""

from __future__ import annotations

import numpy as np

from .dsp import Envelope, Signal, analytic_signal, dct2, idft
from .lp import LpModel, autocorrelate, levinson, lp_power_response


def _check_fit_args(x: Signal, order: int) -> None:
    if len(x) == 0:
        raise ValueError("cannot fit a model to an empty signal")
    if not 0 <= order < len(x):
        raise ValueError(f"order must lie in [0, {len(x) - 1}], got {order}")


def conventional_fdlp(x: Signal, order: int) -> LpModel:
    """Fit an all-pole envelope model to the DCT of ``x``.

    The contribution of each pole peaks at the time its angle maps to; the
    fitted power response covers the even extension of the signal, hence
    ``duration_s`` of twice the input duration.
    """
    _check_fit_args(x, order)
    y = dct2(x.samples)
    r = autocorrelate(y, order)
    return levinson(
        r,
        order,
        domain="conventional_fdlp",
        source_len=len(y),
        duration_s=2.0 * x.duration_s,
    )


def complex_fdlp(x: Signal, order: int) -> LpModel:
    """Fit an all-pole envelope model to the unitary inverse DFT of ``x``.

    The transform is complex, so the model is complex and one-sided in time:
    its response spans exactly the input duration, with no mirrored half.
    """
    _check_fit_args(x, order)
    z = idft(x.samples)
    r = autocorrelate(z, order)
    return levinson(
        r,
        order,
        domain="complex_fdlp",
        source_len=len(z),
        duration_s=x.duration_s,
    )


def envelope(model: LpModel, n_points: int | None = None, half: bool = False) -> Envelope:
    """Evaluate a model's temporal envelope (power units) on a uniform grid.

    For conventional models the default grid has ``2 * source_len`` points
    spanning the mirrored axis, and ``half=True`` keeps only the first half
    (the causal part, aligned with the original signal). Complex models span
    the source duration directly and reject ``half``. Values are normalized
    so the grid mean equals the source's mean power.
    """
    if model.domain not in ("conventional_fdlp", "complex_fdlp"):
        raise ValueError(f"envelope requires an FDLP model, got domain {model.domain!r}")
    if model.source_len is None or model.duration_s is None:
        raise ValueError("model lacks source metadata; cannot place a time axis")
    if model.domain == "complex_fdlp" and half:
        raise ValueError("half=True applies only to conventional models")
    if n_points is None:
        n_points = 2 * model.source_len if model.domain == "conventional_fdlp" else model.source_len
    values = lp_power_response(model, n_points) / model.source_len
    times = model.duration_s * np.arange(n_points) / n_points
    if half:
        keep = n_points // 2
        return Envelope(values=values[:keep], times=times[:keep], symmetric=False)
    return Envelope(values=values, times=times, symmetric=model.domain == "conventional_fdlp")


def envelope_fit_error(model: LpModel, x: Signal) -> float:
    """Relative L2 distance from the model envelope to its Hilbert target.

    The target is the squared Hilbert envelope of ``x`` (even-symmetrized for
    conventional models). The model envelope is scaled by the least-squares
    optimal factor first, so the metric measures shape agreement and is
    insensitive to gain conventions. Decreases as order increases.
    """
    squared = np.abs(analytic_signal(x.samples)) ** 2
    if model.domain == "conventional_fdlp":
        target = np.concatenate([squared, squared[::-1]])
    elif model.domain == "complex_fdlp":
        target = squared
    else:
        raise ValueError(f"fit error requires an FDLP model, got domain {model.domain!r}")
    fitted = envelope(model, n_points=len(target)).values
    scale = float(np.dot(fitted, target) / np.dot(fitted, fitted))
    return float(np.linalg.norm(scale * fitted - target) / np.linalg.norm(target))
