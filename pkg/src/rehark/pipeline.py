"""End-to-end composition: hyperparameters, fitting the adaptation model
from a bundle, and classifying queries.

Every feature set goes through power transform then unit normalization;
queries are additionally rectified against the augmented support before
inference.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Mapping

import numpy as np

from . import krr
from .bridge import augment, make_bridges
from .io_bundle import Bundle
from .kernel import KernelKind, KernelSpec
from .prior import blend_text_priors, refine_prior, visual_prototypes
from .transform import EPS_DEFAULT, l2_normalize, power_transform, rectify


@dataclass(frozen=True)
class HyperParams:
    """The full tunable set for one pipeline configuration."""

    p: float = 1.0
    gamma: float = 0.5
    omega: float = 0.2
    eta: float = 0.5
    alpha_r: float = 0.2
    lam: float = 1.0
    beta1: float = 5.0
    beta2: float = 1.0
    pi: float = 0.5
    sigma_zs: float = 1.0
    augment_enabled: bool = True

    RANGES = {
        "p": (0.5, 1.0),
        "gamma": (0.0, 1.0),
        "omega": (0.0, 1.0),
        "eta": (0.0, 2.0),
        "alpha_r": (0.0, 1.0),
        "lam": (1e-3, 1e3),
        "beta1": (0.5, 50.0),
        "beta2": (0.5, 50.0),
        "pi": (0.0, 1.0),
        "sigma_zs": (0.5, 10.0),
    }

    def validate(self) -> None:
        for name, (lo, hi) in self.RANGES.items():
            value = getattr(self, name)
            if not lo <= value <= hi:
                raise ValueError(f"{name}={value} outside [{lo}, {hi}]")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping) -> "HyperParams":
        known = {f for f in cls.__dataclass_fields__}
        params = cls(**{k: v for k, v in data.items() if k in known})
        params.validate()
        return params

    def with_pinned(self, pinned: Mapping) -> "HyperParams":
        return replace(self, **dict(pinned))

    def kernel_spec(self, kind: KernelKind = KernelKind.MULTISCALE_RBF) -> KernelSpec:
        return KernelSpec(kind=kind, beta1=self.beta1, beta2=self.beta2, pi=self.pi)


def transform_features(x: np.ndarray, p: float, eps: float = EPS_DEFAULT) -> np.ndarray:
    """Power transform followed by unit normalization."""
    return l2_normalize(power_transform(x, p), eps)


@dataclass(eq=False)
class FittedPipeline:
    """A fitted adaptation model plus the query-side preprocessing state."""

    params: HyperParams
    kind: KernelKind
    eps: float
    model: krr.AdaptationModel

    def prepare_queries(self, queries: np.ndarray) -> np.ndarray:
        # alpha_r = 0 must leave plain normalized features bit-identical
        q = transform_features(queries, self.params.p, self.eps)
        if self.params.alpha_r == 0.0:
            return q
        return rectify(q, self.model.s_aug.features, self.params.alpha_r, self.eps)

    def predict_logits(self, queries: np.ndarray) -> np.ndarray:
        return krr.predict(self.model, self.prepare_queries(queries))

    def predict_labels(self, queries: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_logits(queries), axis=1).astype(np.int64)


def build_prior(
    bundle: Bundle, params: HyperParams, support_t: np.ndarray, eps: float = EPS_DEFAULT
) -> np.ndarray:
    """Hybrid prior from transformed text weights and visual prototypes."""
    w_clip = transform_features(bundle.w_clip, params.p, eps)
    w_gpt3 = transform_features(bundle.w_gpt3, params.p, eps)
    w_text = blend_text_priors(w_clip, w_gpt3, params.gamma)
    p_vis = visual_prototypes(support_t, bundle.support_labels, bundle.n_classes)
    return refine_prior(w_text, p_vis, params.omega)


def fit_pipeline(
    bundle: Bundle,
    params: HyperParams,
    kind: KernelKind = KernelKind.MULTISCALE_RBF,
    eps: float = EPS_DEFAULT,
) -> FittedPipeline:
    """Run the full training-free adaptation on a bundle's support set."""
    params.validate()
    support_t = transform_features(bundle.support_features, params.p, eps)
    w_prior = build_prior(bundle, params, support_t, eps)
    bridges = make_bridges(support_t, bundle.support_labels, w_prior, params.eta)
    s_aug = augment(
        support_t, bundle.support_labels, bridges, params.augment_enabled, bundle.n_classes
    )
    model = krr.fit(s_aug, w_prior, params.kernel_spec(kind), params.lam, params.sigma_zs)
    return FittedPipeline(params=params, kind=kind, eps=eps, model=model)


def evaluate_split(
    bundle: Bundle,
    params: HyperParams,
    split: str = "val",
    kind: KernelKind = KernelKind.MULTISCALE_RBF,
    eps: float = EPS_DEFAULT,
) -> float:
    """Fit on the support set and score top-1 accuracy on a query split."""
    from .evaluation import accuracy

    fitted = fit_pipeline(bundle, params, kind, eps)
    pred = fitted.predict_labels(bundle.features(split))
    return accuracy(pred, bundle.labels(split))
