"""Feature-matrix serialization: a small binary container and CSV.

Binary layout: a 22-byte little-endian header (magic ``FDLP``, format
version, frame count, band count, frame rate, sample rate) followed by the
matrix as row-major float32. CSV carries a header row and the frame index in
the first column; values are written with 9 significant digits.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import FormatError
from .spectrogram import FeatureMatrix

MAGIC = b"FDLP"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHIIff")


def write_features(features: FeatureMatrix, path: str | Path, fmt: str = "binary") -> None:
    """Serialize a feature matrix. ``fmt`` is ``binary`` or ``csv``."""
    if not np.all(np.isfinite(features.data)):
        raise ValueError("feature matrix contains non-finite values; refusing to write")
    path = Path(path)
    if fmt == "binary":
        header = _HEADER.pack(
            MAGIC,
            FORMAT_VERSION,
            features.n_frames,
            features.n_bands,
            features.frame_rate_hz,
            features.sample_rate_hz,
        )
        path.write_bytes(header + features.data.astype("<f4").tobytes())
    elif fmt == "csv":
        lines = ["frame," + ",".join(f"band_{b}" for b in range(features.n_bands))]
        for i, row in enumerate(features.data):
            lines.append(f"{i}," + ",".join(format(v, ".9g") for v in row))
        path.write_text("\n".join(lines) + "\n")
    else:
        raise ValueError(f"fmt must be 'binary' or 'csv', got {fmt!r}")


def read_features(path: str | Path) -> FeatureMatrix:
    """Read the binary container back. Band centers are not stored on disk."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError(f"file is {len(raw)} bytes; header needs {_HEADER.size}")
    magic, version, n_frames, n_bands, frame_rate, sample_rate = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}; expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}; expected {FORMAT_VERSION}")
    expected = _HEADER.size + 4 * n_frames * n_bands
    if len(raw) != expected:
        raise FormatError(
            f"file is {len(raw)} bytes but header promises {expected} "
            f"({n_frames} frames x {n_bands} bands)"
        )
    data = np.frombuffer(raw[_HEADER.size :], dtype="<f4").astype(np.float64)
    return FeatureMatrix(
        data=data.reshape(n_frames, n_bands),
        frame_rate_hz=float(frame_rate),
        sample_rate_hz=float(sample_rate),
    )
