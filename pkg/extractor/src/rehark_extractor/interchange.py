"""Writers (and self-check readers) for the bundle interchange format.

Matrix files: 5-byte magic ``REHK1``, u32 version, u64 rows, u64 cols,
then rows*cols little-endian float32 values in row-major order.
Label files: 5-byte magic ``REHKL``, u64 count, then count little-endian
u32 class indices.  This layout is the consumer contract of the
adaptation toolkit and must stay bit-compatible with it.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import IoFailure

MATRIX_MAGIC = b"REHK1"
LABEL_MAGIC = b"REHKL"
MATRIX_VERSION = 1

_MATRIX_HEADER = struct.Struct("<5sIQQ")
_LABEL_HEADER = struct.Struct("<5sQ")


def write_matrix(m: np.ndarray, path: str | Path) -> None:
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or infinite entries")
    header = _MATRIX_HEADER.pack(MATRIX_MAGIC, MATRIX_VERSION, m.shape[0], m.shape[1])
    body = np.ascontiguousarray(m, dtype="<f4").tobytes()
    try:
        Path(path).write_bytes(header + body)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def write_labels(labels: np.ndarray, path: str | Path) -> None:
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValueError(f"expected a label vector, got shape {labels.shape}")
    if labels.size and (labels.min() < 0 or labels.max() >= 2**32):
        raise ValueError("labels must fit in an unsigned 32-bit integer")
    header = _LABEL_HEADER.pack(LABEL_MAGIC, labels.shape[0])
    body = np.ascontiguousarray(labels, dtype="<u4").tobytes()
    try:
        Path(path).write_bytes(header + body)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def read_matrix(path: str | Path) -> np.ndarray:
    """Self-check reader; the primary consumer has its own."""
    raw = Path(path).read_bytes()
    if raw[:5] != MATRIX_MAGIC:
        raise IoFailure(f"{path}: bad magic {raw[:5]!r}")
    _, version, rows, cols = _MATRIX_HEADER.unpack_from(raw)
    if version != MATRIX_VERSION:
        raise IoFailure(f"{path}: unsupported version {version}")
    if len(raw) != _MATRIX_HEADER.size + rows * cols * 4:
        raise IoFailure(f"{path}: truncated body")
    data = np.frombuffer(raw, dtype="<f4", offset=_MATRIX_HEADER.size)
    return data.astype(np.float32).reshape(rows, cols)


def read_labels(path: str | Path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if raw[:5] != LABEL_MAGIC:
        raise IoFailure(f"{path}: bad magic {raw[:5]!r}")
    _, count = _LABEL_HEADER.unpack_from(raw)
    if len(raw) != _LABEL_HEADER.size + count * 4:
        raise IoFailure(f"{path}: truncated body")
    data = np.frombuffer(raw, dtype="<u4", offset=_LABEL_HEADER.size)
    return data.astype(np.int64)
