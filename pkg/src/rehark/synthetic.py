"""Seeded synthetic bundles for tests and demos.

Each class is a random unit direction; support, text weights, and queries
are noisy copies of it. Queries additionally share a constant domain-shift
vector so rectification has signal to remove, and the two text-weight
matrices carry independent noise so blending them genuinely helps.
"""

from __future__ import annotations

import numpy as np

from .io_bundle import Bundle, validate_bundle
from .transform import l2_normalize


def _noisy_copies(rng, centers, per_class, noise):
    rows = []
    labels = []
    for c, mu in enumerate(centers):
        pts = mu[None, :] + noise * rng.standard_normal((per_class, centers.shape[1]))
        rows.append(pts)
        labels.extend([c] * per_class)
    return np.vstack(rows), np.asarray(labels, dtype=np.int64)


def make_synthetic_bundle(
    n_classes: int = 8,
    dim: int = 32,
    n_shots: int = 1,
    n_val: int = 25,
    n_test: int = 50,
    support_noise: float = 0.35,
    text_noise: float = 0.55,
    query_noise: float = 0.45,
    query_shift: float = 0.15,
    seed: int = 0,
) -> Bundle:
    """Build a validated in-memory bundle.

    n_val and n_test count queries per class, so splits stay balanced and
    accuracies are comparable across classes.
    """
    rng = np.random.default_rng(seed)
    centers = l2_normalize(rng.standard_normal((n_classes, dim)))

    w_clip = centers + text_noise * rng.standard_normal(centers.shape)
    w_gpt3 = centers + text_noise * rng.standard_normal(centers.shape)

    support, support_labels = _noisy_copies(rng, centers, n_shots, support_noise)

    shift = query_shift * l2_normalize(rng.standard_normal((1, dim)))
    val, val_labels = _noisy_copies(rng, centers, n_val, query_noise)
    test, test_labels = _noisy_copies(rng, centers, n_test, query_noise)
    val = val + shift
    test = test + shift

    bundle = Bundle(
        support_features=support.astype(np.float32),
        support_labels=support_labels,
        val_features=val.astype(np.float32),
        val_labels=val_labels,
        test_features=test.astype(np.float32),
        test_labels=test_labels,
        w_clip=w_clip.astype(np.float32),
        w_gpt3=w_gpt3.astype(np.float32),
        class_names=tuple(f"class_{c}" for c in range(n_classes)),
        n_classes=n_classes,
        n_shots=n_shots,
        dim=dim,
    )
    validate_bundle(bundle)
    return bundle
