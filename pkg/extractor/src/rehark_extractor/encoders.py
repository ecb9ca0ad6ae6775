"""Embedding encoders behind one protocol.

SeededProjectionEncoder is a deterministic stand-in: a fixed random
projection of raw pixel statistics and hashed text trigrams.  Its
embeddings carry no semantics but are bit-stable across runs, which is
what the interchange and plumbing tests need.  ClipEncoder wraps a real
pretrained backbone and requires its weights to be cached locally.
"""

from __future__ import annotations

import zlib
from pathlib import Path
from typing import Protocol, Sequence, runtime_checkable

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import ImageDecodeFailure, ModelLoadFailure

# stand-in input space: 16x16 RGB pixels and as many trigram bins
_SIDE = 16
_DIM_IN = _SIDE * _SIDE * 3


@runtime_checkable
class Encoder(Protocol):
    model_id: str
    width: int

    def encode_images(self, paths: Sequence[str | Path]) -> np.ndarray: ...

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray: ...


class SeededProjectionEncoder:
    """Frozen random projection over pixel and trigram statistics."""

    def __init__(self, width: int = 64, seed: int = 9):
        if width < 1:
            raise ValueError(f"width={width} must be >= 1")
        self.width = width
        self.model_id = f"seeded-projection-{width}-{seed}"
        rng = np.random.default_rng(seed)
        self._image_proj = rng.standard_normal((_DIM_IN, width))
        self._text_proj = rng.standard_normal((_DIM_IN, width))

    def _pixels(self, path: str | Path) -> np.ndarray:
        try:
            with Image.open(path) as img:
                img = img.convert("RGB").resize(
                    (_SIDE, _SIDE), Image.Resampling.BILINEAR
                )
                data = np.asarray(img, dtype=np.float64)
        except (OSError, UnidentifiedImageError, ValueError) as exc:
            raise ImageDecodeFailure(f"cannot decode {path}: {exc}") from exc
        return data.reshape(-1) / 255.0 - 0.5

    def encode_images(self, paths: Sequence[str | Path]) -> np.ndarray:
        return np.stack([self._pixels(p) @ self._image_proj for p in paths])

    @staticmethod
    def _trigram_counts(text: str) -> np.ndarray:
        padded = f" {text.strip().lower()} "
        counts = np.zeros(_DIM_IN, dtype=np.float64)
        for i in range(len(padded) - 2):
            tri = padded[i : i + 3]
            counts[zlib.crc32(tri.encode("utf-8")) % _DIM_IN] += 1.0
        total = counts.sum()
        return counts / total if total > 0 else counts

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        return np.stack([self._trigram_counts(t) @ self._text_proj for t in texts])


class ClipEncoder:
    """Pretrained vision-language backbone via transformers.

    The projection width is read from the loaded model, not hardcoded.
    Weights are never downloaded here; a missing local snapshot raises
    ModelLoadFailure.
    """

    def __init__(
        self,
        model_id: str = "openai/clip-vit-base-patch16",
        local_files_only: bool = True,
    ):
        try:
            import torch
            from transformers import CLIPModel, CLIPProcessor

            self._torch = torch
            self._model = CLIPModel.from_pretrained(
                model_id, local_files_only=local_files_only
            )
            self._processor = CLIPProcessor.from_pretrained(
                model_id, local_files_only=local_files_only
            )
        except Exception as exc:
            raise ModelLoadFailure(f"cannot load {model_id}: {exc}") from exc
        self._model.eval()
        self.model_id = model_id
        self.width = int(self._model.config.projection_dim)

    def encode_images(self, paths: Sequence[str | Path]) -> np.ndarray:
        images = []
        for path in paths:
            try:
                with Image.open(path) as img:
                    images.append(img.convert("RGB"))
            except (OSError, UnidentifiedImageError, ValueError) as exc:
                raise ImageDecodeFailure(f"cannot decode {path}: {exc}") from exc
        inputs = self._processor(images=images, return_tensors="pt")
        with self._torch.no_grad():
            feats = self._model.get_image_features(**inputs)
        return feats.cpu().numpy().astype(np.float64)

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        inputs = self._processor(
            text=list(texts), return_tensors="pt", padding=True, truncation=True
        )
        with self._torch.no_grad():
            feats = self._model.get_text_features(**inputs)
        return feats.cpu().numpy().astype(np.float64)
