"""WAV input and output, 16-bit PCM mono only.

The reader is a deliberate from-scratch RIFF parser: it validates structure
byte by byte and reports the offset of whatever it cannot accept, rather than
silently coercing. The writer produces the matching canonical layout.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .dsp import Signal
from .errors import FormatError

_PCM_SCALE = 32768.0
_FMT_STRUCT = struct.Struct("<HHIIHH")


def read_wav(path: str | Path) -> Signal:
    """Parse a RIFF/WAVE file into a Signal scaled to [-1, 1).

    Accepts 16-bit PCM mono only; anything else raises :class:`FormatError`
    naming the offending field. Sample value -32768 maps to exactly -1.0.
    """
    raw = Path(path).read_bytes()
    if len(raw) < 12:
        raise FormatError(f"file ends after {len(raw)} bytes; no RIFF header")
    if raw[0:4] != b"RIFF":
        raise FormatError(f"bad chunk id {raw[0:4]!r} at byte offset 0; expected b'RIFF'")
    if raw[8:12] != b"WAVE":
        raise FormatError(f"bad form type {raw[8:12]!r} at byte offset 8; expected b'WAVE'")

    fmt = None
    payload = None
    offset = 12
    while offset + 8 <= len(raw):
        chunk_id = raw[offset : offset + 4]
        (size,) = struct.unpack_from("<I", raw, offset + 4)
        body_start = offset + 8
        if body_start + size > len(raw):
            raise FormatError(
                f"chunk {chunk_id!r} at byte offset {offset} claims {size} bytes "
                f"but the file ends at {len(raw)}"
            )
        body = raw[body_start : body_start + size]
        if chunk_id == b"fmt ":
            if size < _FMT_STRUCT.size:
                raise FormatError(f"fmt chunk at byte offset {offset} is {size} bytes; need 16")
            fmt = _FMT_STRUCT.unpack_from(body)
        elif chunk_id == b"data":
            payload = body
        offset = body_start + size + (size & 1)
    if offset != len(raw):
        raise FormatError(f"trailing {len(raw) - offset} bytes at byte offset {offset}")
    if fmt is None:
        raise FormatError("no fmt chunk found")
    if payload is None:
        raise FormatError("no data chunk found")

    audio_format, channels, sample_rate, _byte_rate, _block_align, bits = fmt
    if audio_format != 1:
        raise FormatError(f"unsupported audio_format={audio_format}; only PCM (1) is supported")
    if channels != 1:
        raise FormatError(f"unsupported channels={channels}; only mono is supported")
    if bits != 16:
        raise FormatError(f"unsupported bits_per_sample={bits}; only 16-bit is supported")
    if sample_rate == 0:
        raise FormatError("sample_rate=0 in fmt chunk")
    if len(payload) % 2 != 0:
        raise FormatError(f"data chunk holds {len(payload)} bytes; not a whole number of samples")

    samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / _PCM_SCALE
    return Signal(samples=samples, sample_rate=float(sample_rate))


def write_wav(signal: Signal, path: str | Path) -> None:
    """Write a Signal as canonical 16-bit PCM mono; values clipped to [-1, 1)."""
    quantized = np.clip(
        np.round(signal.samples * _PCM_SCALE), -32768, 32767
    ).astype("<i2")
    payload = quantized.tobytes()
    rate = int(round(signal.sample_rate))
    header = b"RIFF" + struct.pack("<I", 36 + len(payload)) + b"WAVE"
    header += b"fmt " + struct.pack("<I", 16)
    header += _FMT_STRUCT.pack(1, 1, rate, rate * 2, 2, 16)
    header += b"data" + struct.pack("<I", len(payload))
    Path(path).write_bytes(header + payload)
