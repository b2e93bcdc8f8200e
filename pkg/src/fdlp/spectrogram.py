"""Sub-band envelope features: mel-spaced band models over overlapping frames.

The pipeline windows the signal into long overlapping frames, takes each
frame's one-sided spectrum, fits a complex all-pole envelope model per
mel-spaced band, overlap-adds the band envelopes back to the signal's time
axis, and averages the log envelopes into a fixed-rate feature matrix.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dsp import Signal, hanning
from .errors import NumericError
from .lp import LpModel, autocorrelate, levinson
from .models import envelope

# Near signal edges the analysis window rolls off faster than an all-pole
# response can follow, so the stitched envelope/weight ratio diverges there.
# Flooring the weight at this fraction of its peak caps that amplification;
# output inside the outermost window rise is a down-weighted estimate.
_WEIGHT_FLOOR_REL = 1e-3

# White-noise correction applied to the zero lag of each band fit. Tapered
# narrow-band slices can be almost perfectly predictable at the default
# order, letting rounding noise drive the prediction error negative; this
# multiplicative floor keeps the recursion positive definite while changing
# well-conditioned fits at the billionth level. Multiplicative, so amplitude
# scaling of the input still rescales the fit exactly.
_BAND_NOISE_FLOOR_REL = 1e-9


@dataclass(frozen=True)
class SpectrogramConfig:
    """Parameters of the sub-band envelope extractor.

    Defaults: 50 mel-spaced bands, order-80 band models, 1.5 s Hanning
    frames at 50% overlap, 100 feature rows per second.
    """

    sample_rate_hz: float
    n_bands: int = 50
    lp_order: int = 80
    window_s: float = 1.5
    hop_s: float = 0.75
    frame_rate_hz: float = 100.0
    log_domain_ola: bool = False

    def __post_init__(self):
        if not self.sample_rate_hz > 0:
            raise ValueError("sample_rate_hz must be positive")
        if self.n_bands < 1:
            raise ValueError("n_bands must be >= 1")
        if self.lp_order < 1:
            raise ValueError("lp_order must be >= 1")
        if not self.window_s > 0:
            raise ValueError("window_s must be positive")
        if not 0 < self.hop_s <= self.window_s:
            raise ValueError("hop_s must lie in (0, window_s]")
        if not self.frame_rate_hz > 0:
            raise ValueError("frame_rate_hz must be positive")
        if self.window_samples < 2:
            raise ValueError("window must span at least 2 samples")
        if self.hop_samples < 1:
            raise ValueError("hop must span at least 1 sample")

    @property
    def window_samples(self) -> int:
        return int(round(self.window_s * self.sample_rate_hz))

    @property
    def hop_samples(self) -> int:
        return int(round(self.hop_s * self.sample_rate_hz))


@dataclass(frozen=True)
class FeatureMatrix:
    """Log-envelope features: one row per output frame, one column per band."""

    data: np.ndarray
    frame_rate_hz: float
    sample_rate_hz: float
    band_centers_hz: np.ndarray | None = None
    source_id: str = ""
    duration_s: float = 0.0

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError("feature data must be a 2-D array (frames x bands)")
        object.__setattr__(self, "data", data)
        if self.band_centers_hz is not None:
            centers = np.asarray(self.band_centers_hz, dtype=np.float64)
            if len(centers) != data.shape[1]:
                raise ValueError("band_centers_hz length must match the band count")
            object.__setattr__(self, "band_centers_hz", centers)

    @property
    def n_frames(self) -> int:
        return self.data.shape[0]

    @property
    def n_bands(self) -> int:
        return self.data.shape[1]


class BandWindow(NamedTuple):
    """One band's spectral support: bin range [lo, hi), taper weights, center."""

    lo: int
    hi: int
    weights: np.ndarray
    center_hz: float


def _hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def _mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def mel_band_windows(config: SpectrogramConfig, n_bins: int) -> list[BandWindow]:
    """Cosine tapers on a uniform mel grid covering [0, Nyquist].

    Interior band weights rise and fall so adjacent bands sum to one exactly;
    the first and last bands hold weight one below and above their centers, so
    every bin (DC and Nyquist included) has total weight 1. With a single
    band the window is flat.
    """
    if n_bins < 2 * config.n_bands:
        raise ValueError(
            f"{n_bins} spectral bins cannot support {config.n_bands} bands; "
            "need at least 2 bins per band"
        )
    nyquist = config.sample_rate_hz / 2.0
    bin_hz = nyquist / (n_bins - 1)
    bin_mels = _hz_to_mel(np.arange(n_bins) * bin_hz)
    edges = np.linspace(0.0, _hz_to_mel(nyquist), config.n_bands + 2)

    bands: list[BandWindow] = []
    for b in range(config.n_bands):
        lo_mel, center_mel, hi_mel = edges[b], edges[b + 1], edges[b + 2]
        first = b == 0
        last = b == config.n_bands - 1
        w = np.zeros(n_bins)
        if config.n_bands == 1:
            w[:] = 1.0
        else:
            half = center_mel - lo_mel
            rising = (bin_mels >= lo_mel) & (bin_mels < center_mel)
            falling = (bin_mels >= center_mel) & (bin_mels <= hi_mel)
            w[rising] = 0.5 - 0.5 * np.cos(np.pi * (bin_mels[rising] - lo_mel) / half)
            w[falling] = 0.5 + 0.5 * np.cos(np.pi * (bin_mels[falling] - center_mel) / half)
            if first:
                w[bin_mels < center_mel] = 1.0
            if last:
                w[bin_mels >= center_mel] = 1.0
        support = np.nonzero(w > 0)[0]
        lo_idx, hi_idx = int(support[0]), int(support[-1]) + 1
        bands.append(
            BandWindow(
                lo=lo_idx,
                hi=hi_idx,
                weights=w[lo_idx:hi_idx],
                center_hz=float(_mel_to_hz(center_mel)),
            )
        )
    return bands


def _frame_starts(n: int, window: int, hop: int) -> list[int]:
    # Short signals get exactly one frame; otherwise frames tile at hop
    # spacing until the signal is exhausted (the tail is zero-padded).
    if n <= window:
        return [0]
    return list(range(0, n, hop))


def frame_signal(x: Signal, config: SpectrogramConfig) -> list[np.ndarray]:
    """Cut the signal into hop-spaced frames and apply the analysis window.

    Every frame has ``config.window_samples`` samples; the final frame is
    zero-padded past the signal end. A signal no longer than one window
    yields exactly one frame.
    """
    n = len(x)
    if n == 0:
        raise ValueError("cannot frame an empty signal")
    win_n = config.window_samples
    window = hanning(win_n, "periodic")
    frames = []
    for start in _frame_starts(n, win_n, config.hop_samples):
        segment = x.samples[start : start + win_n]
        if len(segment) < win_n:
            segment = np.concatenate([segment, np.zeros(win_n - len(segment))])
        frames.append(window * segment)
    return frames


def band_complex_fdlp(
    frame_spectrum: np.ndarray,
    band: BandWindow,
    order: int,
    *,
    frame_len: int,
    duration_s: float,
) -> LpModel:
    """Fit a complex envelope model to one band of a frame's one-sided spectrum.

    The tapered spectral slice is conjugated before prediction so the model's
    time response runs forward over the frame rather than reversed. If the
    band holds fewer than ``order + 1`` bins the order is clamped to the
    support and the model is flagged. A small white-noise correction on the
    zero lag keeps near-perfectly-predictable slices positive definite.
    """
    piece = np.conj(frame_spectrum[band.lo : band.hi] * band.weights)
    support = len(piece)
    clamped = False
    if support < order + 1:
        order = support - 1
        clamped = True
    r = autocorrelate(piece, order)
    r[0] *= 1.0 + _BAND_NOISE_FLOOR_REL
    return levinson(
        r,
        order,
        domain="complex_fdlp",
        source_len=frame_len,
        duration_s=duration_s,
        order_clamped=clamped,
    )


def fdlp_spectrogram(
    x: Signal, config: SpectrogramConfig, *, workers: int = 1, source_id: str = ""
) -> FeatureMatrix:
    """Sub-band log-envelope features at a fixed frame rate.

    Band envelopes from overlapping frames are overlap-added with squared
    analysis-window weighting, log-compressed, and boxcar-averaged into
    ``ceil(duration * frame_rate)`` rows of ``n_bands`` columns. Band fits
    are independent, so ``workers > 1`` distributes them over a thread pool
    without changing the result.
    """
    n = len(x)
    if n == 0:
        raise ValueError("cannot extract features from an empty signal")
    win_n = config.window_samples
    hop = config.hop_samples
    if config.lp_order >= win_n / config.n_bands:
        raise ValueError(
            f"lp_order {config.lp_order} is too high for {config.n_bands} bands "
            f"over a {win_n}-sample window (limit {win_n / config.n_bands:.0f}); "
            "bands would hold fewer bins than coefficients"
        )

    window = hanning(win_n, "periodic")
    win_sq = window * window
    frames = frame_signal(x, config)
    starts = _frame_starts(n, win_n, hop)
    n_bins = win_n // 2 + 1
    bands = mel_band_windows(config, n_bins)
    frame_duration_s = win_n / config.sample_rate_hz
    spectra = [np.fft.fft(frame)[:n_bins] for frame in frames]

    def band_envelope(task: tuple[int, int]) -> np.ndarray:
        frame_idx, band_idx = task
        model = band_complex_fdlp(
            spectra[frame_idx],
            bands[band_idx],
            config.lp_order,
            frame_len=win_n,
            duration_s=frame_duration_s,
        )
        return envelope(model, n_points=win_n).values

    tasks = [(fi, bi) for fi in range(len(frames)) for bi in range(len(bands))]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(band_envelope, tasks))
    else:
        results = [band_envelope(t) for t in tasks]

    total = starts[-1] + win_n
    acc = np.zeros((config.n_bands, total))
    weight = np.zeros(total)
    for start in starts:
        weight[start : start + win_n] += win_sq
    floor = _WEIGHT_FLOOR_REL * float(weight.max())
    safe_weight = np.maximum(weight, floor)

    if config.log_domain_ola:
        # Log before overlap-add: undo the window from each frame's envelope,
        # log it, and average with squared-window weights.
        safe_sq = np.maximum(win_sq, _WEIGHT_FLOOR_REL)
        for task, env in zip(tasks, results):
            frame_idx, band_idx = task
            start = starts[frame_idx]
            acc[band_idx, start : start + win_n] += win_sq * np.log(
                np.maximum(env, np.finfo(float).tiny) / safe_sq
            )
        log_envelopes = acc[:, :n] / safe_weight[:n]
    else:
        for task, env in zip(tasks, results):
            frame_idx, band_idx = task
            acc[band_idx, starts[frame_idx] : starts[frame_idx] + win_n] += env
        stitched = acc[:, :n] / safe_weight[:n]
        with np.errstate(divide="ignore"):
            log_envelopes = np.log(stitched)

    if not np.all(np.isfinite(log_envelopes)):
        band_idx, sample_idx = np.argwhere(~np.isfinite(log_envelopes))[0]
        raise NumericError(
            f"non-finite log envelope in band {band_idx} near "
            f"t = {sample_idx / config.sample_rate_hz:.3f} s "
            f"(frame {sample_idx // hop})"
        )

    n_rows = math.ceil(n * config.frame_rate_hz / config.sample_rate_hz - 1e-9)
    features = np.empty((n_rows, config.n_bands))
    samples_per_row = config.sample_rate_hz / config.frame_rate_hz
    for i in range(n_rows):
        lo = int(math.floor(i * samples_per_row))
        hi = min(n, int(math.floor((i + 1) * samples_per_row)))
        hi = max(hi, lo + 1)
        features[i] = log_envelopes[:, lo:hi].mean(axis=1)

    return FeatureMatrix(
        data=features,
        frame_rate_hz=config.frame_rate_hz,
        sample_rate_hz=config.sample_rate_hz,
        band_centers_hz=np.array([b.center_hz for b in bands]),
        source_id=source_id,
        duration_s=x.duration_s,
    )
