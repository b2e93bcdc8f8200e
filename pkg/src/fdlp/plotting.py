"""Figure rendering for CLI reports. File output only; no interactive backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import BenchReport
from .cepstrum import ModulationSpectrum
from .dsp import Envelope, Signal
from .spectrogram import FeatureMatrix

_DPI = 150


def save_envelope_plot(
    env: Envelope, path: str | Path, *, signal: Signal | None = None, title: str = ""
) -> None:
    """Envelope over time, optionally over the waveform that produced it."""
    fig, ax = plt.subplots(figsize=(9, 4))
    if signal is not None:
        ax.plot(signal.times, signal.samples**2, color="0.8", lw=0.5, label="squared waveform")
    ax.plot(env.times, env.values, color="tab:red", lw=1.5, label="envelope")
    ax.set_xlabel("time [s]")
    ax.set_ylabel("power")
    ax.legend(loc="upper right")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_modspec_plot(ms: ModulationSpectrum, path: str | Path, *, title: str = "") -> None:
    """Modulation-spectrum magnitudes against modulation frequency."""
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(ms.freqs_hz, ms.magnitudes, marker="o", ms=3, lw=1.0, color="tab:blue")
    ax.set_xlabel("modulation frequency [Hz]")
    ax.set_ylabel("magnitude")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_feature_plot(fm: FeatureMatrix, path: str | Path, *, title: str = "") -> None:
    """Feature matrix as a time-by-band heat map."""
    fig, ax = plt.subplots(figsize=(9, 4.5))
    extent = [0.0, fm.n_frames / fm.frame_rate_hz, 0.0, fm.n_bands]
    im = ax.imshow(
        fm.data.T, origin="lower", aspect="auto", extent=extent, cmap="magma"
    )
    ax.set_xlabel("time [s]")
    ax.set_ylabel("band index")
    fig.colorbar(im, ax=ax, label="log envelope")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_bench_plot(report: BenchReport, path: str | Path) -> None:
    """Mean per-fit times of the two constructions, with std whiskers."""
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [
        f"conventional\n(order {report.conventional.order})",
        f"complex\n(order {report.complex.order})",
    ]
    means = [report.conventional.mean_ms, report.complex.mean_ms]
    stds = [report.conventional.std_ms, report.complex.std_ms]
    ax.bar(labels, means, yerr=stds, capsize=6, color=["tab:gray", "tab:blue"], width=0.5)
    ax.set_ylabel("mean fit time [ms]")
    ax.set_title(f"{report.n_signals} paired fits, reduction {report.reduction_pct:.1f}%")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
