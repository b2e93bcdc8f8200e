"""Tests for the sub-band envelope feature extractor."""

import numpy as np
import pytest

from conftest import make_speech_like
from fdlp.dsp import Envelope, Signal, hanning
from fdlp.errors import DegenerateSignalError, NumericError
from fdlp.spectrogram import (
    BandWindow,
    FeatureMatrix,
    SpectrogramConfig,
    band_complex_fdlp,
    fdlp_spectrogram,
    frame_signal,
    mel_band_windows,
)

SR = 16000.0


def default_config(**overrides) -> SpectrogramConfig:
    return SpectrogramConfig(sample_rate_hz=SR, **overrides)


class TestSpectrogramConfig:
    def test_default_window_and_hop_sample_counts(self):
        cfg = default_config()
        assert cfg.window_samples == 24000
        assert cfg.hop_samples == 12000

    def test_nonpositive_rate_raises(self):
        with pytest.raises(ValueError, match="sample_rate_hz must be positive"):
            SpectrogramConfig(sample_rate_hz=0.0)

    def test_bad_band_count_raises(self):
        with pytest.raises(ValueError, match="n_bands must be >= 1"):
            default_config(n_bands=0)

    def test_bad_order_raises(self):
        with pytest.raises(ValueError, match="lp_order must be >= 1"):
            default_config(lp_order=0)

    def test_bad_window_raises(self):
        with pytest.raises(ValueError, match="window_s must be positive"):
            default_config(window_s=0.0)

    def test_hop_beyond_window_raises(self):
        with pytest.raises(ValueError, match="hop_s must lie in"):
            default_config(hop_s=2.0)

    def test_bad_frame_rate_raises(self):
        with pytest.raises(ValueError, match="frame_rate_hz must be positive"):
            default_config(frame_rate_hz=0.0)

    def test_window_shorter_than_two_samples_raises(self):
        with pytest.raises(ValueError, match="at least 2 samples"):
            default_config(window_s=6e-5, hop_s=6e-5)

    def test_hop_shorter_than_one_sample_raises(self):
        with pytest.raises(ValueError, match="at least 1 sample"):
            default_config(hop_s=1e-5)


class TestFeatureMatrix:
    def test_rejects_non_2d_data(self):
        with pytest.raises(ValueError, match="2-D"):
            FeatureMatrix(data=np.zeros(5), frame_rate_hz=100.0, sample_rate_hz=SR)

    def test_rejects_mismatched_band_centers(self):
        with pytest.raises(ValueError, match="band_centers_hz length"):
            FeatureMatrix(
                data=np.zeros((4, 3)),
                frame_rate_hz=100.0,
                sample_rate_hz=SR,
                band_centers_hz=np.zeros(2),
            )

    def test_shape_properties(self):
        fm = FeatureMatrix(data=np.zeros((7, 3)), frame_rate_hz=100.0, sample_rate_hz=SR)
        assert fm.n_frames == 7
        assert fm.n_bands == 3


class TestMelBandWindows:
    def test_weights_sum_to_one_at_every_bin(self):
        cfg = default_config()
        n_bins = cfg.window_samples // 2 + 1
        bands = mel_band_windows(cfg, n_bins)
        total = np.zeros(n_bins)
        for band in bands:
            assert np.all(band.weights >= 0.0) and np.all(band.weights <= 1.0)
            total[band.lo : band.hi] += band.weights
        np.testing.assert_allclose(total, 1.0, atol=1e-12)

    def test_centers_increase(self):
        bands = mel_band_windows(default_config(), 12001)
        centers = [b.center_hz for b in bands]
        assert all(b > a for a, b in zip(centers, centers[1:]))

    def test_narrowest_band_still_holds_many_bins(self):
        cfg = default_config()
        bands = mel_band_windows(cfg, cfg.window_samples // 2 + 1)
        assert min(b.hi - b.lo for b in bands) > cfg.lp_order + 1

    def test_single_band_covers_everything(self):
        bands = mel_band_windows(default_config(n_bands=1, lp_order=10), 1000)
        assert len(bands) == 1
        np.testing.assert_allclose(bands[0].weights, 1.0)

    def test_too_few_bins_raises(self):
        with pytest.raises(ValueError, match="bins"):
            mel_band_windows(default_config(), 60)


class TestFrameSignal:
    def test_short_signal_yields_one_frame(self):
        cfg = default_config()
        for n in (22400, 24000):
            frames = frame_signal(Signal(samples=np.ones(n), sample_rate=SR), cfg)
            assert len(frames) == 1
            assert len(frames[0]) == 24000

    def test_three_second_signal_yields_four_frames(self):
        cfg = default_config()
        frames = frame_signal(Signal(samples=np.ones(48000), sample_rate=SR), cfg)
        assert len(frames) == 4

    def test_window_is_applied_and_tail_zero_padded(self):
        cfg = default_config()
        x = Signal(samples=np.ones(30000), sample_rate=SR)
        frames = frame_signal(x, cfg)
        window = hanning(24000, "periodic")
        np.testing.assert_allclose(frames[0], window)
        # Second frame starts at sample 12000 and runs past the signal end.
        np.testing.assert_allclose(frames[1][:18000], window[:18000])
        np.testing.assert_allclose(frames[1][18000:], 0.0)

    def test_empty_signal_raises(self):
        with pytest.raises(ValueError, match="empty"):
            frame_signal(Signal(samples=np.array([], dtype=np.float64), sample_rate=SR), default_config())


class TestBandComplexFdlp:
    def test_envelope_runs_forward_in_frame_time(self):
        # A tone whose amplitude ramps up within the frame: the band
        # envelope must ramp up too, not appear time-reversed.
        cfg = default_config(n_bands=10, lp_order=20, window_s=1.0, hop_s=0.5)
        n = cfg.window_samples
        t = np.arange(n) / SR
        ramp = np.linspace(0.05, 1.0, n)
        frame = hanning(n, "periodic") * (ramp * np.sin(2.0 * np.pi * 2000.0 * t))
        n_bins = n // 2 + 1
        bands = mel_band_windows(cfg, n_bins)
        centers = np.array([b.center_hz for b in bands])
        band = bands[int(np.argmin(np.abs(centers - 2000.0)))]
        spectrum = np.fft.fft(frame)[:n_bins]
        model = band_complex_fdlp(spectrum, band, 20, frame_len=n, duration_s=1.0)
        from fdlp.models import envelope

        values = envelope(model, n_points=n).values
        target = (hanning(n, "periodic") * ramp) ** 2
        corr_fwd = np.corrcoef(values, target)[0, 1]
        corr_rev = np.corrcoef(values, target[::-1])[0, 1]
        assert corr_fwd > 0.9
        assert corr_fwd > corr_rev + 0.2

    def test_order_clamps_to_band_support(self):
        rng = np.random.default_rng(70)
        spectrum = rng.standard_normal(100) + 1j * rng.standard_normal(100)
        band = BandWindow(lo=0, hi=5, weights=np.ones(5), center_hz=100.0)
        model = band_complex_fdlp(spectrum, band, 20, frame_len=100, duration_s=1.0)
        assert model.order == 4
        assert model.order_clamped

    def test_ample_support_is_not_clamped(self):
        rng = np.random.default_rng(71)
        spectrum = rng.standard_normal(200) + 1j * rng.standard_normal(200)
        band = BandWindow(lo=10, hi=110, weights=np.ones(100), center_hz=500.0)
        model = band_complex_fdlp(spectrum, band, 20, frame_len=200, duration_s=1.0)
        assert model.order == 20
        assert not model.order_clamped


class TestFdlpSpectrogram:
    def test_default_shape_for_one_and_a_half_seconds(self):
        rng = np.random.default_rng(72)
        x = Signal(samples=rng.standard_normal(24000), sample_rate=SR)
        features = fdlp_spectrogram(x, default_config())
        assert features.data.shape == (150, 50)
        assert np.all(np.isfinite(features.data))

    def test_row_count_follows_duration_times_frame_rate(self):
        rng = np.random.default_rng(73)
        cfg = default_config()
        for n, rows in ((8000, 50), (19680, 123), (24000, 150), (48000, 300)):
            x = Signal(samples=rng.standard_normal(n), sample_rate=SR)
            assert fdlp_spectrogram(x, cfg).data.shape == (rows, cfg.n_bands)

    def test_amplitude_scaling_shifts_every_cell_by_twice_log_gain(self):
        rng = np.random.default_rng(62)
        x = Signal(samples=rng.standard_normal(24000), sample_rate=SR)
        base = fdlp_spectrogram(x, default_config()).data
        for gain in (2.0, 3.0, 0.37):
            scaled = fdlp_spectrogram(
                Signal(samples=gain * x.samples, sample_rate=SR), default_config()
            ).data
            dev = np.abs(scaled - (base + 2.0 * np.log(gain)))
            assert float(dev.max()) < 1e-8

    def test_time_shift_by_one_hop_reproduces_interior_rows(self):
        # Two crops of the same long recording, offset by exactly one hop:
        # rows describing the same absolute time must agree wherever both
        # crops cover it with whole (unpadded) analysis frames.
        rng = np.random.default_rng(61)
        y = rng.standard_normal(60000)
        cfg = default_config()
        f1 = fdlp_spectrogram(Signal(samples=y[:48000], sample_rate=SR), cfg).data
        f2 = fdlp_spectrogram(Signal(samples=y[12000:60000], sample_rate=SR), cfg).data
        a, b = f1[150:225], f2[75:150]
        rel = np.abs(a - b) / np.maximum(np.abs(a), 1e-12)
        assert float(rel.max()) < 1e-6

    def test_pure_tone_energy_lands_in_one_band(self):
        t = np.arange(24000) / SR
        x = Signal(samples=np.sin(2.0 * np.pi * 1000.0 * t), sample_rate=SR)
        features = fdlp_spectrogram(x, default_config())
        mean_log = features.data.mean(axis=0)
        best = int(np.argmax(mean_log))
        assert abs(features.band_centers_hz[best] - 1000.0) < 100.0
        others = np.delete(mean_log, [best - 1, best, best + 1])
        margin_db = 10.0 * (mean_log[best] - float(others.max())) / np.log(10.0)
        assert margin_db >= 20.0

    def test_steady_tone_envelope_is_flat_away_from_the_edges(self):
        t = np.arange(24000) / SR
        x = Signal(samples=np.sin(2.0 * np.pi * 1000.0 * t), sample_rate=SR)
        features = fdlp_spectrogram(x, default_config())
        best = int(np.argmax(features.data.mean(axis=0)))
        interior = np.exp(features.data[20:130, best])
        assert float(interior.max() / interior.min()) < 1.5

    def test_white_noise_features_are_statistically_flat_in_time(self):
        # Per band, the spread over time should be small next to the mean
        # level, and the first and second halves should agree on the level.
        # Narrow high bands fit near-interpolating models whose log spread
        # is naturally about one unit, so the per-band bound is loose while
        # the mean over bands is tight.
        rng = np.random.default_rng(60)
        x = Signal(samples=rng.standard_normal(48000), sample_rate=SR)
        data = fdlp_spectrogram(x, default_config()).data[10:-10]
        cov = data.std(axis=0) / np.abs(data.mean(axis=0))
        assert float(cov.mean()) < 0.2
        assert float(cov.max()) < 0.45
        half = len(data) // 2
        drift = np.abs(data[:half].mean(axis=0) - data[half:].mean(axis=0))
        assert float(drift.max()) < 0.7

    def test_thread_workers_do_not_change_the_result(self):
        x = make_speech_like(seed=7, n=24000, sample_rate=SR)
        single = fdlp_spectrogram(x, default_config(), workers=1).data
        pooled = fdlp_spectrogram(x, default_config(), workers=4).data
        assert np.array_equal(single, pooled)

    def test_log_domain_ola_matches_the_linear_path_away_from_edges(self):
        x = make_speech_like(seed=8, n=48000, sample_rate=SR)
        linear = fdlp_spectrogram(x, default_config()).data
        logged = fdlp_spectrogram(x, default_config(log_domain_ola=True)).data
        assert np.all(np.isfinite(logged))
        a, b = linear[10:-10].ravel(), logged[10:-10].ravel()
        assert np.corrcoef(a, b)[0, 1] > 0.999

    def test_zero_signal_raises_degenerate(self):
        x = Signal(samples=np.zeros(24000), sample_rate=SR)
        with pytest.raises(DegenerateSignalError, match="no usable energy"):
            fdlp_spectrogram(x, default_config())

    def test_non_finite_envelope_is_reported_with_location(self, monkeypatch):
        import fdlp.spectrogram as spectrogram_module

        def broken_envelope(model, n_points=None, half=False):
            values = np.full(n_points, np.nan)
            return Envelope(values=values, times=np.arange(n_points, dtype=float))

        monkeypatch.setattr(spectrogram_module, "envelope", broken_envelope)
        rng = np.random.default_rng(74)
        x = Signal(samples=rng.standard_normal(24000), sample_rate=SR)
        with pytest.raises(NumericError, match="non-finite log envelope in band"):
            fdlp_spectrogram(x, default_config())

    def test_order_too_high_for_band_count_raises(self):
        rng = np.random.default_rng(75)
        x = Signal(samples=rng.standard_normal(24000), sample_rate=SR)
        with pytest.raises(ValueError, match="too high"):
            fdlp_spectrogram(x, default_config(lp_order=480))

    def test_empty_signal_raises(self):
        x = Signal(samples=np.array([], dtype=np.float64), sample_rate=SR)
        with pytest.raises(ValueError, match="empty"):
            fdlp_spectrogram(x, default_config())

    def test_metadata_is_carried_through(self):
        rng = np.random.default_rng(76)
        x = Signal(samples=rng.standard_normal(24000), sample_rate=SR)
        features = fdlp_spectrogram(x, default_config(), source_id="clip-42")
        assert features.source_id == "clip-42"
        assert features.sample_rate_hz == SR
        assert features.frame_rate_hz == 100.0
        assert len(features.band_centers_hz) == 50
