"""Command-line interface: synthesis, envelopes, modulation spectra, features,
benchmark, and self-verification.

Exit codes: 0 success, 1 operation error (bad data, numeric failure, IO), 2
usage error (argparse). Delimited outputs are locale-independent CSV with 9
significant digits; ``--plot PATH`` renders a figure next to the data output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .audio_io import read_wav, write_wav
from .bench import format_report, run_benchmark
from .cepstrum import (
    cepstral_recursion,
    cepstrum_oracle_fft,
    modulation_spectrum,
    modulation_spectrum_direct,
)
from .dsp import (
    AmSignalSpec,
    Signal,
    fourier_magnitude_reversal_deviation,
    hanning,
    hilbert_envelope,
    synth_am,
    verify_fourier_magnitude_identity,
)
from .errors import FdlpError
from .lp import LpModel, poles
from .models import complex_fdlp, conventional_fdlp, envelope
from .spectrogram import SpectrogramConfig, fdlp_spectrogram
from .features_io import write_features


def _parse_mod(text: str) -> tuple[tuple[float, float, float], ...]:
    """Parse 'F:DEPTH:PHASE[,F:DEPTH:PHASE...]' (phase optional, degrees)."""
    comps = []
    for part in text.split(","):
        fields = part.split(":")
        if len(fields) not in (2, 3):
            raise ValueError(
                f"bad modulation component {part!r}; expected F:DEPTH or F:DEPTH:PHASE"
            )
        freq, depth = float(fields[0]), float(fields[1])
        phase = float(fields[2]) if len(fields) == 3 else 0.0
        comps.append((freq, depth, phase))
    return tuple(comps)


def _write_csv(path: str, header: str, columns: tuple[np.ndarray, ...]) -> None:
    lines = [header]
    for row in zip(*columns):
        lines.append(",".join(format(v, ".9g") for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _fit(x: Signal, method: str, order: int) -> LpModel:
    if method == "conventional":
        return conventional_fdlp(x, order)
    return complex_fdlp(x, order)


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = AmSignalSpec(
        carrier_hz=args.carrier,
        components=_parse_mod(args.mod) if args.mod else (),
        duration_s=args.dur,
        sample_rate=args.rate,
    )
    signal = synth_am(spec)
    peak = float(np.max(np.abs(signal.samples)))
    if peak >= 1.0:
        signal = Signal(samples=signal.samples / (peak * (1.0 + 1e-6)), sample_rate=args.rate)
    write_wav(signal, args.out)
    print(f"wrote {len(signal)} samples at {args.rate:g} Hz to {args.out}")
    return 0


def _cmd_envelope(args: argparse.Namespace) -> int:
    x = read_wav(args.input)
    if args.method == "hilbert":
        # Squared so all three methods emit power and overlay directly.
        hil = hilbert_envelope(x)
        env = type(hil)(values=hil.values**2, times=hil.times, symmetric=False)
    else:
        model = _fit(x, args.method, args.order)
        env = envelope(model, half=args.method == "conventional")
    _write_csv(args.out, "time,value", (env.times, env.values))
    print(f"wrote {len(env)} envelope samples to {args.out}")
    if args.plot:
        from .plotting import save_envelope_plot

        save_envelope_plot(env, args.plot, signal=x, title=f"{args.method} envelope")
        print(f"wrote plot to {args.plot}")
    return 0


def _cmd_modspec(args: argparse.Namespace) -> int:
    x = read_wav(args.input)
    model = _fit(x, args.method, args.order)
    if args.direct:
        ms = modulation_spectrum_direct(model)
    else:
        ms = modulation_spectrum(model, n_coeffs=args.n_coeffs)
    _write_csv(args.out, "freq_hz,magnitude", (ms.freqs_hz, ms.magnitudes))
    print(f"wrote {len(ms)} modulation bins to {args.out}")
    if args.plot:
        from .plotting import save_modspec_plot

        route = "direct" if args.direct else "cepstral"
        save_modspec_plot(ms, args.plot, title=f"{args.method} modulation spectrum ({route})")
        print(f"wrote plot to {args.plot}")
    return 0


def _cmd_spectrogram(args: argparse.Namespace) -> int:
    x = read_wav(args.input)
    config = SpectrogramConfig(
        sample_rate_hz=x.sample_rate,
        n_bands=args.bands,
        lp_order=args.order,
        window_s=args.window,
        hop_s=args.hop,
        frame_rate_hz=args.frame_rate,
    )
    fm = fdlp_spectrogram(x, config, workers=args.workers, source_id=str(args.input))
    write_features(fm, args.out, fmt="binary" if args.format == "bin" else "csv")
    print(f"wrote {fm.n_frames} x {fm.n_bands} features to {args.out}")
    if args.plot:
        from .plotting import save_feature_plot

        save_feature_plot(fm, args.plot, title=f"{args.bands}-band log envelopes")
        print(f"wrote plot to {args.plot}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    report = run_benchmark(
        n_signals=args.n,
        duration_s=args.dur,
        conv_order=args.conv_order,
        cplx_order=args.cplx_order,
        seed=args.seed,
    )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(format_report(report))
    if args.plot:
        from .plotting import save_bench_plot

        save_bench_plot(report, args.plot)
        print(f"wrote plot to {args.plot}", file=sys.stderr if args.json else sys.stdout)
    return 0


def _check_identity() -> tuple[bool, str]:
    rng = np.random.default_rng(100)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(64, 4097))
        worst = max(worst, verify_fourier_magnitude_identity(rng.standard_normal(n)))
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        worst = max(worst, fourier_magnitude_reversal_deviation(z))
    return worst < 1e-12, f"max deviation {worst:.3e} (tol 1e-12)"


def _check_cepstrum() -> tuple[bool, str]:
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(5):
        p = int(rng.integers(2, 31))
        radii = rng.uniform(0.1, 0.9, p)
        angles = rng.uniform(0.0, 2.0 * np.pi, p)
        poly = np.poly(radii * np.exp(1j * angles))
        model = LpModel(coeffs=-poly[1:], gain=float(rng.uniform(0.5, 2.0)), order=p)
        rec = cepstral_recursion(model, 60).c
        orc = cepstrum_oracle_fft(model, grid=4096).c[:60]
        worst = max(worst, float(np.max(np.abs(rec - orc))))
    return worst < 1e-8, f"max recursion-vs-oracle error {worst:.3e} (tol 1e-8)"


def _check_pole_symmetry() -> tuple[bool, str]:
    rng = np.random.default_rng(102)
    x = Signal(rng.standard_normal(1024), 8000.0)
    roots = poles(conventional_fdlp(x, 16))
    worst = max(float(np.min(np.abs(np.conj(z) - roots))) for z in roots)
    return worst < 1e-6, f"max conjugate-pairing distance {worst:.3e} (tol 1e-6)"


def _check_cola() -> tuple[bool, str]:
    win = hanning(512, "periodic")
    tiled = np.zeros(512 * 4)
    for start in range(0, len(tiled) - 511, 256):
        tiled[start : start + 512] += win
    interior = tiled[512 : len(tiled) - 512]
    worst = float(np.max(np.abs(interior - 1.0)))
    return worst < 1e-12, f"max deviation from constant overlap-add {worst:.3e} (tol 1e-12)"


def _cmd_verify(args: argparse.Namespace) -> int:
    checks = [
        ("fourier magnitude identity", _check_identity),
        ("cepstral recursion vs FFT oracle", _check_cepstrum),
        ("conventional pole conjugate symmetry", _check_pole_symmetry),
        ("window overlap-add tiling", _check_cola),
    ]
    all_ok = True
    for name, check in checks:
        ok, detail = check()
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdlp",
        description="All-pole temporal envelopes, modulation spectra, and sub-band features",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="render an amplitude-modulated test tone to WAV")
    p.add_argument("--carrier", type=float, required=True, help="carrier frequency [Hz]")
    p.add_argument(
        "--mod",
        default="",
        help="modulation components F:DEPTH:PHASE[,F:DEPTH:PHASE...] (phase in degrees)",
    )
    p.add_argument("--dur", type=float, required=True, help="duration [s]")
    p.add_argument("--rate", type=float, required=True, help="sample rate [Hz]")
    p.add_argument("--out", required=True, help="output WAV path")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("envelope", help="temporal envelope of a WAV file (CSV time,value)")
    p.add_argument("--in", dest="input", required=True, help="input WAV path")
    p.add_argument(
        "--method",
        choices=("conventional", "complex", "hilbert"),
        default="complex",
        help="model route; hilbert emits the squared analytic-signal magnitude",
    )
    p.add_argument("--order", type=int, default=80, help="model order (ignored for hilbert)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot", default="", help="optional figure path (PNG)")
    p.set_defaults(func=_cmd_envelope)

    p = sub.add_parser("modspec", help="modulation spectrum of a WAV file (CSV freq_hz,magnitude)")
    p.add_argument("--in", dest="input", required=True, help="input WAV path")
    p.add_argument("--method", choices=("conventional", "complex"), default="complex")
    p.add_argument("--order", type=int, default=20, help="model order")
    p.add_argument(
        "--direct",
        action="store_true",
        help="transform the log envelope instead of using the cepstral recursion",
    )
    p.add_argument("--n-coeffs", type=int, default=None, help="cepstral coefficients (default: to 30 Hz)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot", default="", help="optional figure path (PNG)")
    p.set_defaults(func=_cmd_modspec)

    p = sub.add_parser("spectrogram", help="sub-band log-envelope features from a WAV file")
    p.add_argument("--in", dest="input", required=True, help="input WAV path")
    p.add_argument("--bands", type=int, default=50, help="number of mel-spaced bands")
    p.add_argument("--order", type=int, default=80, help="per-band model order")
    p.add_argument("--frame-rate", type=float, default=100.0, help="output rows per second")
    p.add_argument("--window", type=float, default=1.5, help="analysis window [s]")
    p.add_argument("--hop", type=float, default=0.75, help="analysis hop [s]")
    p.add_argument("--format", choices=("bin", "csv"), default="bin", help="output container")
    p.add_argument("--workers", type=int, default=1, help="parallel band fits")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--plot", default="", help="optional figure path (PNG)")
    p.set_defaults(func=_cmd_spectrogram)

    p = sub.add_parser("bench", help="paired conventional-vs-complex fit timing")
    p.add_argument("--n", type=int, default=5000, help="number of signals")
    p.add_argument("--dur", type=float, default=1.5, help="signal duration [s]")
    p.add_argument("--conv-order", type=int, default=300)
    p.add_argument("--cplx-order", type=int, default=150)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--plot", default="", help="optional figure path (PNG)")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="run built-in numerical self-checks")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FdlpError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
