"""Binary interchange format for embedding bundles.

Matrix files: 5-byte magic ``REHK1``, u32 version, u64 rows, u64 cols,
then rows*cols little-endian float32 values in row-major order.
Label files: 5-byte magic ``REHKL``, u64 count, then count little-endian
u32 class indices.  A bundle is a JSON manifest naming the component
files plus ``n_classes``, ``n_shots``, ``dim`` and the class names.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    DimensionMismatch,
    IoFailure,
    LabelOutOfRange,
    MissingComponent,
    NonFiniteEntry,
    TruncatedFile,
    UnbalancedSupport,
    UnsupportedVersion,
)

MATRIX_MAGIC = b"REHK1"
LABEL_MAGIC = b"REHKL"
MATRIX_VERSION = 1

_MATRIX_HEADER = struct.Struct("<5sIQQ")
_LABEL_HEADER = struct.Struct("<5sQ")

# manifest keys that name component files, in canonical order
MATRIX_KEYS = ("support_features", "val_features", "test_features", "w_clip", "w_gpt3")
LABEL_KEYS = ("support_labels", "val_labels", "test_labels")
SCALAR_KEYS = ("n_classes", "n_shots", "dim")


def load_matrix(path: str | Path) -> np.ndarray:
    """Read a matrix file, returning a float32 array bit-identical to its contents."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if len(raw) < len(MATRIX_MAGIC):
        raise TruncatedFile(f"{path}: {len(raw)} bytes is shorter than the magic tag")
    if raw[:5] != MATRIX_MAGIC:
        raise BadMagic(f"{path}: expected {MATRIX_MAGIC!r}, found {raw[:5]!r}")
    if len(raw) < _MATRIX_HEADER.size:
        raise TruncatedFile(f"{path}: incomplete header ({len(raw)} bytes)")
    _, version, rows, cols = _MATRIX_HEADER.unpack_from(raw)
    if version != MATRIX_VERSION:
        raise UnsupportedVersion(f"{path}: version {version}, expected {MATRIX_VERSION}")
    expected = _MATRIX_HEADER.size + rows * cols * 4
    if len(raw) != expected:
        raise TruncatedFile(f"{path}: {len(raw)} bytes, header declares {expected}")
    data = np.frombuffer(raw, dtype="<f4", offset=_MATRIX_HEADER.size)
    return data.astype(np.float32).reshape(rows, cols)


def save_matrix(m: np.ndarray, path: str | Path) -> None:
    """Write a matrix file; values are stored as little-endian float32."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteEntry("matrix contains NaN or infinite entries")
    header = _MATRIX_HEADER.pack(MATRIX_MAGIC, MATRIX_VERSION, m.shape[0], m.shape[1])
    body = np.ascontiguousarray(m, dtype="<f4").tobytes()
    try:
        Path(path).write_bytes(header + body)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def load_labels(path: str | Path) -> np.ndarray:
    """Read a label file, returning an int64 vector of class indices."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if len(raw) < len(LABEL_MAGIC):
        raise TruncatedFile(f"{path}: {len(raw)} bytes is shorter than the magic tag")
    if raw[:5] != LABEL_MAGIC:
        raise BadMagic(f"{path}: expected {LABEL_MAGIC!r}, found {raw[:5]!r}")
    if len(raw) < _LABEL_HEADER.size:
        raise TruncatedFile(f"{path}: incomplete header ({len(raw)} bytes)")
    _, count = _LABEL_HEADER.unpack_from(raw)
    expected = _LABEL_HEADER.size + count * 4
    if len(raw) != expected:
        raise TruncatedFile(f"{path}: {len(raw)} bytes, header declares {expected}")
    data = np.frombuffer(raw, dtype="<u4", offset=_LABEL_HEADER.size)
    return data.astype(np.int64)


def save_labels(labels: np.ndarray, path: str | Path) -> None:
    """Write a label file; indices are stored as little-endian u32."""
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise DimensionMismatch(f"expected a label vector, got shape {labels.shape}")
    if labels.size and (labels.min() < 0 or labels.max() >= 2**32):
        raise LabelOutOfRange("labels must fit in an unsigned 32-bit integer")
    header = _LABEL_HEADER.pack(LABEL_MAGIC, labels.shape[0])
    body = np.ascontiguousarray(labels, dtype="<u4").tobytes()
    try:
        Path(path).write_bytes(header + body)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


@dataclass(eq=False)
class Bundle:
    """Pre-extracted embeddings and class metadata for one dataset."""

    support_features: np.ndarray
    support_labels: np.ndarray
    val_features: np.ndarray
    val_labels: np.ndarray
    test_features: np.ndarray
    test_labels: np.ndarray
    w_clip: np.ndarray
    w_gpt3: np.ndarray
    class_names: tuple[str, ...]
    n_classes: int
    n_shots: int
    dim: int

    def features(self, split: str) -> np.ndarray:
        return getattr(self, f"{split}_features")

    def labels(self, split: str) -> np.ndarray:
        return getattr(self, f"{split}_labels")


def validate_bundle(bundle: Bundle) -> None:
    """Check every bundle invariant, raising the matching error on violation."""
    d = bundle.dim
    for key in MATRIX_KEYS:
        m = getattr(bundle, key)
        if m.ndim != 2 or m.shape[1] != d:
            raise DimensionMismatch(f"{key}: shape {m.shape}, expected (*, {d})")
    for key in ("w_clip", "w_gpt3"):
        m = getattr(bundle, key)
        if m.shape[0] != bundle.n_classes:
            raise DimensionMismatch(
                f"{key}: {m.shape[0]} rows, expected {bundle.n_classes}"
            )
    if len(bundle.class_names) != bundle.n_classes:
        raise DimensionMismatch(
            f"class_names: {len(bundle.class_names)} entries, expected {bundle.n_classes}"
        )
    for split in ("support", "val", "test"):
        feats = bundle.features(split)
        labels = bundle.labels(split)
        if labels.shape[0] != feats.shape[0]:
            raise DimensionMismatch(
                f"{split}: {labels.shape[0]} labels for {feats.shape[0]} feature rows"
            )
        if labels.size and (labels.min() < 0 or labels.max() >= bundle.n_classes):
            raise LabelOutOfRange(
                f"{split}: labels must lie in [0, {bundle.n_classes})"
            )
    counts = np.bincount(bundle.support_labels, minlength=bundle.n_classes)
    if not np.all(counts == bundle.n_shots):
        bad = int(np.flatnonzero(counts != bundle.n_shots)[0])
        raise UnbalancedSupport(
            f"class {bad} has {int(counts[bad])} support samples, expected {bundle.n_shots}"
        )


def load_bundle(manifest_path: str | Path) -> Bundle:
    """Load and validate a bundle from its JSON manifest.

    Component file paths are resolved relative to the manifest's directory.
    Unknown manifest keys are ignored.
    """
    manifest_path = Path(manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read {manifest_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"{manifest_path}: invalid JSON: {exc}") from exc

    for key in MATRIX_KEYS + LABEL_KEYS + SCALAR_KEYS + ("class_names",):
        if key not in manifest:
            raise MissingComponent(f"{manifest_path}: manifest lacks key {key!r}")

    root = manifest_path.parent
    parts: dict[str, np.ndarray] = {}
    for key in MATRIX_KEYS + LABEL_KEYS:
        path = root / manifest[key]
        if not path.is_file():
            raise MissingComponent(f"{key}: file {path} does not exist")
        parts[key] = load_matrix(path) if key in MATRIX_KEYS else load_labels(path)

    bundle = Bundle(
        support_features=parts["support_features"],
        support_labels=parts["support_labels"],
        val_features=parts["val_features"],
        val_labels=parts["val_labels"],
        test_features=parts["test_features"],
        test_labels=parts["test_labels"],
        w_clip=parts["w_clip"],
        w_gpt3=parts["w_gpt3"],
        class_names=tuple(str(n) for n in manifest["class_names"]),
        n_classes=int(manifest["n_classes"]),
        n_shots=int(manifest["n_shots"]),
        dim=int(manifest["dim"]),
    )
    validate_bundle(bundle)
    return bundle


def save_bundle(bundle: Bundle, out_dir: str | Path, manifest_name: str = "manifest.json") -> Path:
    """Persist a bundle into a directory, returning the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest: dict = {}
    for key in MATRIX_KEYS:
        fname = f"{key}.rehk"
        save_matrix(getattr(bundle, key), out_dir / fname)
        manifest[key] = fname
    for key in LABEL_KEYS:
        fname = f"{key}.rehkl"
        save_labels(getattr(bundle, key), out_dir / fname)
        manifest[key] = fname
    manifest["class_names"] = list(bundle.class_names)
    manifest["n_classes"] = bundle.n_classes
    manifest["n_shots"] = bundle.n_shots
    manifest["dim"] = bundle.dim
    manifest_path = out_dir / manifest_name
    try:
        manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {manifest_path}: {exc}") from exc
    return manifest_path
