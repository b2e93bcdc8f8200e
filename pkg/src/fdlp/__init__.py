"""All-pole temporal envelope modeling in the frequency domain.

Fit envelope models to signals two ways (real DCT route, complex spectral
route), turn them into modulation spectra via the complex cepstrum, and
extract sub-band log-envelope feature matrices. See the README for the CLI.
"""

from .bench import BenchReport, MethodTiming, run_benchmark, speech_shaped_noise
from .cepstrum import (
    Cepstrum,
    ModulationSpectrum,
    cepstral_recursion,
    cepstrum_oracle_fft,
    modulation_spectrum,
    modulation_spectrum_direct,
)
from .dsp import (
    AmComponent,
    AmSignalSpec,
    Envelope,
    Signal,
    analytic_signal,
    dct2,
    dft,
    fourier_magnitude_reversal_deviation,
    hanning,
    hilbert_envelope,
    idft,
    synth_am,
    verify_fourier_magnitude_identity,
)
from .errors import (
    DegenerateSignalError,
    FdlpError,
    FormatError,
    IllConditionedError,
    NumericError,
    ResolutionError,
)
from .audio_io import read_wav, write_wav
from .features_io import read_features, write_features
from .lp import (
    LpModel,
    autocorrelate,
    levinson,
    lp_power_response,
    poles,
    reflection_coefficients,
)
from .models import complex_fdlp, conventional_fdlp, envelope, envelope_fit_error
from .spectrogram import (
    BandWindow,
    FeatureMatrix,
    SpectrogramConfig,
    band_complex_fdlp,
    fdlp_spectrogram,
    frame_signal,
    mel_band_windows,
)

__version__ = "0.1.0"

__all__ = [
    "AmComponent",
    "AmSignalSpec",
    "BandWindow",
    "BenchReport",
    "Cepstrum",
    "DegenerateSignalError",
    "Envelope",
    "FdlpError",
    "FeatureMatrix",
    "FormatError",
    "IllConditionedError",
    "LpModel",
    "MethodTiming",
    "ModulationSpectrum",
    "NumericError",
    "ResolutionError",
    "Signal",
    "SpectrogramConfig",
    "analytic_signal",
    "autocorrelate",
    "band_complex_fdlp",
    "cepstral_recursion",
    "cepstrum_oracle_fft",
    "complex_fdlp",
    "conventional_fdlp",
    "dct2",
    "dft",
    "envelope",
    "envelope_fit_error",
    "fdlp_spectrogram",
    "fourier_magnitude_reversal_deviation",
    "frame_signal",
    "hanning",
    "hilbert_envelope",
    "idft",
    "levinson",
    "lp_power_response",
    "mel_band_windows",
    "modulation_spectrum",
    "modulation_spectrum_direct",
    "poles",
    "read_features",
    "read_wav",
    "reflection_coefficients",
    "run_benchmark",
    "speech_shaped_noise",
    "synth_am",
    "verify_fourier_magnitude_identity",
    "write_features",
    "write_wav",
]
