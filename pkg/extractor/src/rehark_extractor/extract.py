"""Bundle assembly: encode splits, build text weights, write the manifest."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .encoders import Encoder
from .errors import IoFailure
from .interchange import write_labels, write_matrix
from .prompts import PromptSet
from .splits import DatasetSplits, SplitItem, sample_support

MATRIX_KEYS = ("support_features", "val_features", "test_features", "w_clip", "w_gpt3")
LABEL_KEYS = ("support_labels", "val_labels", "test_labels")


def _unit_rows(m: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    norms = np.linalg.norm(m, axis=1)
    return m / np.where(norms < eps, 1.0, norms)[:, None]


def extract_features(
    paths, encoder: Encoder, images_root: str | Path | None = None
) -> np.ndarray:
    """One unit-norm embedding row per image, in input order."""
    root = Path(images_root) if images_root is not None else None
    resolved = [root / p if root is not None else Path(p) for p in paths]
    return _unit_rows(encoder.encode_images(resolved))


def build_text_weights(prompts: PromptSet, encoder: Encoder) -> np.ndarray:
    """Per class: encode every description, average, then normalize."""
    rows = [encoder.encode_texts(descs).mean(axis=0) for descs in prompts.descriptions]
    return _unit_rows(np.stack(rows))


def write_bundle(
    out_dir: str | Path,
    *,
    support: np.ndarray,
    support_labels: np.ndarray,
    val: np.ndarray,
    val_labels: np.ndarray,
    test: np.ndarray,
    test_labels: np.ndarray,
    w_clip: np.ndarray,
    w_gpt3: np.ndarray,
    class_names: tuple[str, ...],
    n_shots: int,
    manifest_name: str = "manifest.json",
) -> Path:
    """Write every component file plus the manifest, returning its path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    matrices = {
        "support_features": support,
        "val_features": val,
        "test_features": test,
        "w_clip": w_clip,
        "w_gpt3": w_gpt3,
    }
    labels = {
        "support_labels": support_labels,
        "val_labels": val_labels,
        "test_labels": test_labels,
    }
    manifest: dict = {}
    for key in MATRIX_KEYS:
        fname = f"{key}.rehk"
        write_matrix(matrices[key], out_dir / fname)
        manifest[key] = fname
    for key in LABEL_KEYS:
        fname = f"{key}.rehkl"
        write_labels(labels[key], out_dir / fname)
        manifest[key] = fname
    manifest["class_names"] = list(class_names)
    manifest["n_classes"] = len(class_names)
    manifest["n_shots"] = n_shots
    manifest["dim"] = int(np.asarray(support).shape[1])
    path = out_dir / manifest_name
    try:
        path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


def _labels_of(items: tuple[SplitItem, ...]) -> np.ndarray:
    return np.asarray([item.label for item in items], dtype=np.int64)


def extract_bundle(
    splits: DatasetSplits,
    clip_prompts: PromptSet,
    gpt3_prompts: PromptSet,
    encoder: Encoder,
    out_dir: str | Path,
    n_shots: int = 1,
    seed: int = 0,
    images_root: str | Path | None = None,
) -> Path:
    """Full extraction: support sampling, encoding, weights, manifest."""
    support_items = sample_support(splits.train, splits.n_classes, n_shots, seed)
    return write_bundle(
        out_dir,
        support=extract_features([i.path for i in support_items], encoder, images_root),
        support_labels=_labels_of(support_items),
        val=extract_features([i.path for i in splits.val], encoder, images_root),
        val_labels=_labels_of(splits.val),
        test=extract_features([i.path for i in splits.test], encoder, images_root),
        test_labels=_labels_of(splits.test),
        w_clip=build_text_weights(clip_prompts, encoder),
        w_gpt3=build_text_weights(gpt3_prompts, encoder),
        class_names=splits.class_names,
        n_shots=n_shots,
    )
