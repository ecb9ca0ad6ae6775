"""Proximal kernel ridge regression: closed-form fit anchored to the
zero-shot predictor, plus inference and model serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .bridge import AugmentedSupport
from .errors import DimensionMismatch, IoFailure, SolveFailure
from .io_bundle import load_matrix, save_matrix
from .kernel import KernelKind, KernelSpec, gram


@dataclass(eq=False)
class AdaptationModel:
    """Fitted state: augmented support, refined prior, kernel, coefficients."""

    s_aug: AugmentedSupport
    w_prior: np.ndarray
    spec: KernelSpec
    lam: float
    sigma_zs: float
    alpha_coef: np.ndarray


def zero_shot_logits(x: np.ndarray, w_prior: np.ndarray, sigma_zs: float) -> np.ndarray:
    """Scaled cosine scores sigma_zs * (x @ w_prior.T)."""
    x = np.asarray(x, dtype=np.float64)
    w_prior = np.asarray(w_prior, dtype=np.float64)
    if x.shape[1] != w_prior.shape[1]:
        raise DimensionMismatch(f"x dim {x.shape[1]} != prior dim {w_prior.shape[1]}")
    return sigma_zs * (x @ w_prior.T)


def fit(
    s_aug: AugmentedSupport,
    w_prior: np.ndarray,
    spec: KernelSpec,
    lam: float,
    sigma_zs: float,
) -> AdaptationModel:
    """Solve (K + lam I) alpha = Y - Y_zs in closed form.

    K + lam I is symmetric positive definite for lam > 0, so a Cholesky
    factorization is used; non-finite inputs are rejected, never retried
    with a generic solver.
    """
    if lam <= 0:
        raise ValueError(f"lam={lam} must be > 0")
    feats = np.asarray(s_aug.features, dtype=np.float64)
    if feats.shape[0] == 0:
        raise ValueError("augmented support is empty")
    k = gram(feats, feats, spec)
    rhs = s_aug.labels_onehot - zero_shot_logits(feats, w_prior, sigma_zs)
    if not (np.all(np.isfinite(k)) and np.all(np.isfinite(rhs))):
        raise SolveFailure("non-finite entries in the kernel system")
    system = k + lam * np.eye(k.shape[0])
    try:
        alpha = cho_solve(cho_factor(system, lower=True), rhs)
    except np.linalg.LinAlgError as exc:
        raise SolveFailure(f"factorization failed: {exc}") from exc
    return AdaptationModel(
        s_aug=s_aug,
        w_prior=np.asarray(w_prior, dtype=np.float64),
        spec=spec,
        lam=lam,
        sigma_zs=sigma_zs,
        alpha_coef=alpha,
    )


def predict(model: AdaptationModel, queries: np.ndarray) -> np.ndarray:
    """Logits: zero-shot path plus kernel adaptation path.

    Queries are expected rectified and normalized.
    """
    zs = zero_shot_logits(queries, model.w_prior, model.sigma_zs)
    k_q = gram(np.asarray(queries, dtype=np.float64), model.s_aug.features, model.spec)
    return zs + k_q @ model.alpha_coef


def predict_labels(model: AdaptationModel, queries: np.ndarray) -> np.ndarray:
    """Row-wise argmax of predict; ties resolve to the lowest class index."""
    return np.argmax(predict(model, queries), axis=1).astype(np.int64)


_MODEL_FILES = {
    "alpha_coef": "alpha_coef.rehk",
    "support_features": "support_features.rehk",
    "labels_onehot": "labels_onehot.rehk",
    "w_prior": "w_prior.rehk",
}
_SIDECAR = "model.json"


def save_model(model: AdaptationModel, out_dir: str | Path) -> Path:
    """Persist a fitted model: matrices in the interchange format, scalars
    in a JSON sidecar.  Matrix values are stored as float32."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_matrix(model.alpha_coef, out_dir / _MODEL_FILES["alpha_coef"])
    save_matrix(model.s_aug.features, out_dir / _MODEL_FILES["support_features"])
    save_matrix(model.s_aug.labels_onehot, out_dir / _MODEL_FILES["labels_onehot"])
    save_matrix(model.w_prior, out_dir / _MODEL_FILES["w_prior"])
    sidecar = {
        "kind": model.spec.kind.value,
        "beta1": model.spec.beta1,
        "beta2": model.spec.beta2,
        "pi": model.spec.pi,
        "lam": model.lam,
        "sigma_zs": model.sigma_zs,
        "source_mask": [str(s) for s in model.s_aug.source_mask],
        "files": dict(_MODEL_FILES),
    }
    path = out_dir / _SIDECAR
    try:
        path.write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


def load_model(model_dir: str | Path) -> AdaptationModel:
    """Load a model saved by save_model."""
    model_dir = Path(model_dir)
    path = model_dir / _SIDECAR
    try:
        sidecar = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"{path}: invalid JSON: {exc}") from exc
    files = sidecar["files"]
    s_aug = AugmentedSupport(
        features=load_matrix(model_dir / files["support_features"]).astype(np.float64),
        labels_onehot=load_matrix(model_dir / files["labels_onehot"]).astype(np.float64),
        source_mask=np.asarray(sidecar["source_mask"]),
    )
    return AdaptationModel(
        s_aug=s_aug,
        w_prior=load_matrix(model_dir / files["w_prior"]).astype(np.float64),
        spec=KernelSpec(
            kind=KernelKind(sidecar["kind"]),
            beta1=float(sidecar["beta1"]),
            beta2=float(sidecar["beta2"]),
            pi=float(sidecar["pi"]),
        ),
        lam=float(sidecar["lam"]),
        sigma_zs=float(sidecar["sigma_zs"]),
        alpha_coef=load_matrix(model_dir / files["alpha_coef"]).astype(np.float64),
    )
