"""Reference classifiers: zero-shot cosine argmax and a Nadaraya-Watson
style cache estimator over the support set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .krr import zero_shot_logits


@dataclass(frozen=True)
class NwParams:
    """Cache affinity sharpness and cache-vs-prior balance."""

    beta_nw: float = 5.0
    mix: float = 1.0

    def __post_init__(self) -> None:
        if self.beta_nw <= 0:
            raise ValueError(f"beta_nw={self.beta_nw} must be > 0")
        if self.mix < 0:
            raise ValueError(f"mix={self.mix} must be >= 0")


def zero_shot_classify(x: np.ndarray, w_text: np.ndarray, sigma_zs: float) -> np.ndarray:
    """Argmax of the scaled cosine scores against per-class text weights."""
    return np.argmax(zero_shot_logits(x, w_text, sigma_zs), axis=1).astype(np.int64)


def nw_logits(
    queries: np.ndarray,
    support: np.ndarray,
    labels_onehot: np.ndarray,
    w_text: np.ndarray,
    params: NwParams,
    sigma_zs: float,
) -> np.ndarray:
    """Prior scores plus cache scores from exponential cosine affinities.

    logits = sigma_zs * (q @ w_text.T)
             + mix * exp(-beta_nw * (1 - q @ support.T)) @ labels_onehot
    """
    queries = np.asarray(queries, dtype=np.float64)
    support = np.asarray(support, dtype=np.float64)
    labels_onehot = np.asarray(labels_onehot, dtype=np.float64)
    if queries.shape[1] != support.shape[1]:
        raise DimensionMismatch(
            f"query dim {queries.shape[1]} != support dim {support.shape[1]}"
        )
    if labels_onehot.shape[0] != support.shape[0]:
        raise DimensionMismatch(
            f"{labels_onehot.shape[0]} one-hot rows for {support.shape[0]} support rows"
        )
    prior = zero_shot_logits(queries, w_text, sigma_zs)
    affinity = np.exp(-params.beta_nw * (1.0 - queries @ support.T))
    return prior + params.mix * (affinity @ labels_onehot)


def nw_classify(
    queries: np.ndarray,
    support: np.ndarray,
    labels_onehot: np.ndarray,
    w_text: np.ndarray,
    params: NwParams,
    sigma_zs: float,
) -> np.ndarray:
    """Argmax of nw_logits; ties resolve to the lowest class index."""
    logits = nw_logits(queries, support, labels_onehot, w_text, params, sigma_zs)
    return np.argmax(logits, axis=1).astype(np.int64)
