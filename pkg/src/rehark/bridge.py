"""Synthetic bridge samples and support-set augmentation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, LabelOutOfRange
from .transform import l2_normalize

SOURCE_VISUAL = "visual"
SOURCE_BRIDGE = "bridge"


@dataclass(eq=False)
class AugmentedSupport:
    """Support features (visual rows, optionally followed by their bridges)
    with one-hot labels and a per-row source flag."""

    features: np.ndarray
    labels_onehot: np.ndarray
    source_mask: np.ndarray

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]


def one_hot(labels: np.ndarray, n_classes: int) -> np.ndarray:
    labels = np.asarray(labels)
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise LabelOutOfRange(f"labels must lie in [0, {n_classes})")
    out = np.zeros((labels.shape[0], n_classes), dtype=np.float64)
    out[np.arange(labels.shape[0]), labels] = 1.0
    return out


def make_bridges(
    support: np.ndarray,
    labels: np.ndarray,
    w_prior: np.ndarray,
    eta: float,
) -> np.ndarray:
    """Blend each support row with its class prior: normalize(x + eta * w[label])."""
    if eta < 0:
        raise ValueError(f"eta={eta} must be >= 0")
    support = np.asarray(support, dtype=np.float64)
    labels = np.asarray(labels)
    w_prior = np.asarray(w_prior, dtype=np.float64)
    if support.shape[1] != w_prior.shape[1]:
        raise DimensionMismatch(
            f"support dim {support.shape[1]} != prior dim {w_prior.shape[1]}"
        )
    if labels.shape[0] != support.shape[0]:
        raise DimensionMismatch(
            f"{labels.shape[0]} labels for {support.shape[0]} support rows"
        )
    if labels.size and (labels.min() < 0 or labels.max() >= w_prior.shape[0]):
        raise LabelOutOfRange(f"labels must lie in [0, {w_prior.shape[0]})")
    return l2_normalize(support + eta * w_prior[labels])


def augment(
    support: np.ndarray,
    labels: np.ndarray,
    bridges: np.ndarray,
    enabled: bool,
    n_classes: int,
) -> AugmentedSupport:
    """Stack support and bridge rows (when enabled) with duplicated one-hot labels."""
    support = np.asarray(support, dtype=np.float64)
    bridges = np.asarray(bridges, dtype=np.float64)
    labels = np.asarray(labels)
    if bridges.shape != support.shape:
        raise DimensionMismatch(
            f"bridges {bridges.shape} not row-aligned with support {support.shape}"
        )
    y = one_hot(labels, n_classes)
    n = support.shape[0]
    if not enabled:
        return AugmentedSupport(
            features=support.copy(),
            labels_onehot=y,
            source_mask=np.full(n, SOURCE_VISUAL),
        )
    return AugmentedSupport(
        features=np.vstack([support, bridges]),
        labels_onehot=np.vstack([y, y]),
        source_mask=np.concatenate(
            [np.full(n, SOURCE_VISUAL), np.full(n, SOURCE_BRIDGE)]
        ),
    )
