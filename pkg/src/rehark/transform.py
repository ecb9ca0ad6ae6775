"""Feature-space preprocessing: power transform, unit-sphere projection,
and first-moment rectification of query statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyInput, InvalidExponent, NonFiniteEntry

EPS_DEFAULT = 1e-12


@dataclass(frozen=True)
class TransformParams:
    """Preprocessing knobs: power exponent, rectification strength, norm floor."""

    p: float = 1.0
    alpha_r: float = 0.0
    eps: float = EPS_DEFAULT

    def __post_init__(self) -> None:
        if not 0.5 <= self.p <= 1.0:
            raise InvalidExponent(f"p={self.p} outside [0.5, 1.0]")
        if self.alpha_r < 0:
            raise ValueError(f"alpha_r={self.alpha_r} must be >= 0")
        if self.eps <= 0:
            raise ValueError(f"eps={self.eps} must be > 0")


def power_transform(x: np.ndarray, p: float) -> np.ndarray:
    """Elementwise sign(x) * |x|**p.

    Odd in x and sign-preserving; p = 1 is an exact pass-through.
    """
    if p <= 0:
        raise InvalidExponent(f"p={p} must be > 0")
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise NonFiniteEntry("power_transform input contains NaN or infinite entries")
    if p == 1.0:
        return x.copy()
    return np.sign(x) * np.abs(x) ** p


def l2_normalize(
    x: np.ndarray, eps: float = EPS_DEFAULT, return_flags: bool = False
) -> np.ndarray | tuple[np.ndarray, np.ndarray]:
    """Scale each row to unit Euclidean norm.

    Rows whose norm is below ``eps`` are passed through unchanged; with
    ``return_flags=True`` a boolean mask of those degenerate rows is
    returned alongside the matrix.
    """
    x = np.asarray(x, dtype=np.float64)
    norms = np.linalg.norm(x, axis=1)
    degenerate = norms < eps
    out = x / np.where(degenerate, 1.0, norms)[:, None]
    if return_flags:
        return out, degenerate
    return out


def rectify(
    query: np.ndarray,
    support_aug: np.ndarray,
    alpha_r: float,
    eps: float = EPS_DEFAULT,
) -> np.ndarray:
    """Shift queries toward the augmented-support mean, then renormalize.

    Each query row becomes l2_normalize(row + alpha_r * (mu_support - mu_query))
    where the means are column means.  alpha_r = 0 takes the plain
    l2_normalize code path, so the outputs are bit-identical to it.
    """
    query = np.asarray(query, dtype=np.float64)
    support_aug = np.asarray(support_aug, dtype=np.float64)
    if query.ndim != 2 or support_aug.ndim != 2:
        raise DimensionMismatch("rectify expects 2-D inputs")
    if query.shape[0] == 0 or support_aug.shape[0] == 0:
        raise EmptyInput("rectify requires at least one query and one support row")
    if query.shape[1] != support_aug.shape[1]:
        raise DimensionMismatch(
            f"query dim {query.shape[1]} != support dim {support_aug.shape[1]}"
        )
    if alpha_r == 0:
        return l2_normalize(query, eps)
    gap = support_aug.mean(axis=0) - query.mean(axis=0)
    return l2_normalize(query + alpha_r * gap, eps)
