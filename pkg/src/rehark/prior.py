"""Refined hybrid prior: text-weight blending, visual prototypes, and the
semantic-visual refinement that anchors the adaptation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyClass, GammaOutOfRange, OmegaOutOfRange
from .transform import l2_normalize


@dataclass(frozen=True)
class PriorParams:
    gamma: float = 0.5
    omega: float = 0.2

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise GammaOutOfRange(f"gamma={self.gamma} outside [0, 1]")
        if not 0.0 <= self.omega <= 1.0:
            raise OmegaOutOfRange(f"omega={self.omega} outside [0, 1]")


def blend_text_priors(w_clip: np.ndarray, w_gpt3: np.ndarray, gamma: float) -> np.ndarray:
    """Row-normalized (1 - gamma) * w_clip + gamma * w_gpt3."""
    if not 0.0 <= gamma <= 1.0:
        raise GammaOutOfRange(f"gamma={gamma} outside [0, 1]")
    w_clip = np.asarray(w_clip, dtype=np.float64)
    w_gpt3 = np.asarray(w_gpt3, dtype=np.float64)
    if w_clip.shape != w_gpt3.shape:
        raise DimensionMismatch(f"w_clip {w_clip.shape} != w_gpt3 {w_gpt3.shape}")
    return l2_normalize((1.0 - gamma) * w_clip + gamma * w_gpt3)


def visual_prototypes(support: np.ndarray, labels: np.ndarray, n_classes: int) -> np.ndarray:
    """Per-class centroids of the support features, row-normalized."""
    support = np.asarray(support, dtype=np.float64)
    labels = np.asarray(labels)
    if labels.shape[0] != support.shape[0]:
        raise DimensionMismatch(
            f"{labels.shape[0]} labels for {support.shape[0]} support rows"
        )
    protos = np.empty((n_classes, support.shape[1]), dtype=np.float64)
    for c in range(n_classes):
        rows = support[labels == c]
        if rows.shape[0] == 0:
            raise EmptyClass(f"class {c} has no support samples")
        protos[c] = rows.mean(axis=0)
    return l2_normalize(protos)


def refine_prior(w_text: np.ndarray, p_vis: np.ndarray, omega: float) -> np.ndarray:
    """Row-normalized (1 - omega) * w_text + omega * p_vis.

    omega = 0 must reproduce w_text exactly (not normalize(w_text)), so the
    blend is bypassed there; inputs are unit-row by contract.
    """
    if not 0.0 <= omega <= 1.0:
        raise OmegaOutOfRange(f"omega={omega} outside [0, 1]")
    w_text = np.asarray(w_text, dtype=np.float64)
    p_vis = np.asarray(p_vis, dtype=np.float64)
    if w_text.shape != p_vis.shape:
        raise DimensionMismatch(f"w_text {w_text.shape} != p_vis {p_vis.shape}")
    if omega == 0.0:
        return w_text.copy()
    return l2_normalize((1.0 - omega) * w_text + omega * p_vis)
