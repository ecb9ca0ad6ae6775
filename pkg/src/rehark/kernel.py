"""Gram matrices for the linear, Laplacian, RBF, and multi-scale RBF kernels."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DimensionMismatch, InvalidSpec


class KernelKind(str, Enum):
    LINEAR = "linear"
    LAPLACIAN = "laplacian"
    RBF = "rbf"
    MULTISCALE_RBF = "multiscale_rbf"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel selection plus bandwidths.

    beta1 is the bandwidth of every single-scale kernel; the multi-scale
    kernel mixes bandwidths beta1 and beta2 with weight pi.  pi = 1 must
    reproduce the single-scale RBF at beta1 exactly.
    """

    kind: KernelKind = KernelKind.MULTISCALE_RBF
    beta1: float = 5.0
    beta2: float = 1.0
    pi: float = 0.5

    def __post_init__(self) -> None:
        kind = KernelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is not KernelKind.LINEAR and self.beta1 <= 0:
            raise InvalidSpec(f"beta1={self.beta1} must be > 0 for kind {kind.value}")
        if kind is KernelKind.MULTISCALE_RBF:
            if self.beta2 <= 0:
                raise InvalidSpec(f"beta2={self.beta2} must be > 0")
            if not 0.0 <= self.pi <= 1.0:
                raise InvalidSpec(f"pi={self.pi} outside [0, 1]")


def squared_euclidean_distances(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Pairwise ||x_i - y_j||^2 via the Gram expansion, clamped at zero.

    When y is x the diagonal is exactly zero so self-Gram kernels hit 1.
    """
    same = y is x
    x = np.asarray(x, dtype=np.float64)
    y = x if same else np.asarray(y, dtype=np.float64)
    if x.shape[1] != y.shape[1]:
        raise DimensionMismatch(f"x dim {x.shape[1]} != y dim {y.shape[1]}")
    sq_x = np.einsum("ij,ij->i", x, x)
    sq_y = sq_x if same else np.einsum("ij,ij->i", y, y)
    d = sq_x[:, None] + sq_y[None, :] - 2.0 * (x @ y.T)
    np.maximum(d, 0.0, out=d)
    if same:
        np.fill_diagonal(d, 0.0)
    return d


def gram(x: np.ndarray, y: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """Kernel matrix with entry (i, j) = K(x_i, y_j)."""
    same = y is x
    x = np.asarray(x, dtype=np.float64)
    y = x if same else np.asarray(y, dtype=np.float64)
    if x.shape[1] != y.shape[1]:
        raise DimensionMismatch(f"x dim {x.shape[1]} != y dim {y.shape[1]}")
    kind = spec.kind
    if kind is KernelKind.LINEAR:
        return x @ y.T
    if kind is KernelKind.LAPLACIAN:
        return np.exp(-spec.beta1 * cdist(x, y, metric="cityblock"))
    d = squared_euclidean_distances(x, y)
    if kind is KernelKind.RBF:
        return np.exp(-spec.beta1 * d)
    if kind is KernelKind.MULTISCALE_RBF:
        return spec.pi * np.exp(-spec.beta1 * d) + (1.0 - spec.pi) * np.exp(-spec.beta2 * d)
    raise InvalidSpec(f"unknown kernel kind {kind!r}")
