"""Accuracy metric, ablation orchestration, method comparison, and report
emission in Markdown, CSV, and JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .baseline import NwParams, nw_classify, zero_shot_classify
from .bridge import one_hot
from .errors import ConstraintConflict, EmptyInput, IoFailure, LengthMismatch
from .io_bundle import Bundle
from .kernel import KernelKind
from .pipeline import evaluate_split
from .prior import blend_text_priors
from .search import SearchResult, SearchSpace, run_search, trial_rng
from .transform import l2_normalize

# ablation variants and the parameters each one pins
VARIANTS: dict[str, dict] = {
    "full": {},
    "no_refine": {"omega": 0.0},
    "no_multiscale": {"pi": 1.0},
    "no_rectify": {"alpha_r": 0.0},
    "no_augment": {"augment_enabled": False},
    "no_power": {"p": 1.0},
    "only_text_gpt": {"gamma": 1.0, "omega": 0.0},
    "only_visual": {"omega": 1.0},
}


@dataclass(frozen=True)
class AblationConstraints:
    variant: str
    pinned: Mapping

    @classmethod
    def from_name(cls, name: str) -> "AblationConstraints":
        key = name.strip().lower()
        if key not in VARIANTS:
            raise ConstraintConflict(
                f"unknown variant {name!r}; expected one of {sorted(VARIANTS)}"
            )
        return cls(variant=key, pinned=dict(VARIANTS[key]))


def accuracy(pred: np.ndarray, truth: np.ndarray) -> float:
    """Fraction of exact label matches."""
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape[0] != truth.shape[0]:
        raise LengthMismatch(f"{pred.shape[0]} predictions for {truth.shape[0]} labels")
    if pred.shape[0] == 0:
        raise EmptyInput("accuracy of an empty prediction vector is undefined")
    return float(np.mean(pred == truth))


@dataclass(frozen=True)
class ReportRow:
    name: str
    accuracies: tuple[float, ...]
    average: float


@dataclass(frozen=True)
class Report:
    """Rows of per-dataset accuracies with their arithmetic mean."""

    datasets: tuple[str, ...]
    rows: tuple[ReportRow, ...]

    @staticmethod
    def make_row(name: str, accuracies) -> ReportRow:
        accs = tuple(float(a) for a in accuracies)
        return ReportRow(name=name, accuracies=accs, average=float(np.mean(accs)))

    def to_json(self) -> str:
        payload = {
            "datasets": list(self.datasets),
            "rows": [
                {"name": r.name, "accuracies": list(r.accuracies), "average": r.average}
                for r in self.rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        payload = json.loads(text)
        return cls(
            datasets=tuple(payload["datasets"]),
            rows=tuple(
                ReportRow(
                    name=r["name"],
                    accuracies=tuple(float(a) for a in r["accuracies"]),
                    average=float(r["average"]),
                )
                for r in payload["rows"]
            ),
        )

    def to_csv(self) -> str:
        lines = ["method," + ",".join(self.datasets) + ",average"]
        for r in self.rows:
            cells = [f"{100.0 * a:.2f}" for a in r.accuracies]
            lines.append(f"{r.name}," + ",".join(cells) + f",{100.0 * r.average:.2f}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        header = ["method", *self.datasets, "average"]
        lines = [
            "| " + " | ".join(header) + " |",
            "| " + " | ".join("---" for _ in header) + " |",
        ]
        for r in self.rows:
            cells = [f"{100.0 * a:.2f}" for a in r.accuracies]
            lines.append(
                "| " + " | ".join([r.name, *cells, f"{100.0 * r.average:.2f}"]) + " |"
            )
        return "\n".join(lines) + "\n"


FORMATS = ("markdown", "csv", "json")


def emit_report(report: Report, fmt: str, path: str | Path | None) -> str:
    """Render a report; write it to ``path`` when given, returning the text."""
    fmt = {"md": "markdown"}.get(fmt, fmt)
    if fmt == "markdown":
        text = report.to_markdown()
    elif fmt == "csv":
        text = report.to_csv()
    elif fmt == "json":
        text = report.to_json()
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc
    return text


def _test_accuracy(bundle: Bundle, result: SearchResult, kind: KernelKind) -> float:
    return evaluate_split(bundle, result.best.params, "test", kind)


def run_ablation(
    bundle: Bundle,
    budget: int,
    seed: int,
    variants: list[str],
    kind: KernelKind = KernelKind.MULTISCALE_RBF,
    space: SearchSpace | None = None,
    threads: int = 1,
    dataset_name: str = "dataset",
    log_fn: Callable[[str], None] | None = None,
) -> Report:
    """Re-run the search under each variant's pinned constraints and score
    the best configuration on the test split."""
    rows = []
    for name in variants:
        constraints = AblationConstraints.from_name(name)
        result = run_search(
            bundle,
            space=space,
            budget=budget,
            seed=seed,
            pinned=constraints.pinned,
            kind=kind,
            threads=threads,
            log_fn=log_fn,
        )
        rows.append(Report.make_row(constraints.variant, [_test_accuracy(bundle, result, kind)]))
    return Report(datasets=(dataset_name,), rows=tuple(rows))


# NW baseline sampling ranges; sigma is fixed, only relative scale matters
NW_BETA_RANGE = (0.5, 50.0)
NW_MIX_RANGE = (0.0, 10.0)


def tune_nw(
    bundle: Bundle, budget: int, seed: int
) -> tuple[float, NwParams, float]:
    """Seeded random search for the cache baseline on the validation split.

    Returns (gamma, params, val_accuracy) of the best trial.
    """
    support = l2_normalize(np.asarray(bundle.support_features, dtype=np.float64))
    onehot = one_hot(bundle.support_labels, bundle.n_classes)
    best: tuple[float, NwParams, float] | None = None
    for i in range(budget):
        rng = trial_rng(seed, i)
        gamma = float(rng.uniform(0.0, 1.0))
        beta_nw = float(np.exp(rng.uniform(np.log(NW_BETA_RANGE[0]), np.log(NW_BETA_RANGE[1]))))
        mix = float(rng.uniform(*NW_MIX_RANGE))
        params = NwParams(beta_nw=beta_nw, mix=mix)
        w_text = blend_text_priors(bundle.w_clip, bundle.w_gpt3, gamma)
        pred = nw_classify(
            l2_normalize(np.asarray(bundle.val_features, dtype=np.float64)),
            support,
            onehot,
            w_text,
            params,
            sigma_zs=1.0,
        )
        acc = accuracy(pred, bundle.val_labels)
        if best is None or acc > best[2]:
            best = (gamma, params, acc)
    return best


def compare_methods(
    bundle: Bundle,
    budget: int,
    seed: int,
    kind: KernelKind = KernelKind.MULTISCALE_RBF,
    space: SearchSpace | None = None,
    threads: int = 1,
    dataset_name: str = "dataset",
    log_fn: Callable[[str], None] | None = None,
) -> Report:
    """Test-split accuracy rows for the zero-shot prior, the tuned cache
    baseline, and the tuned full pipeline."""
    test = l2_normalize(np.asarray(bundle.test_features, dtype=np.float64))

    # untuned zero-shot row: CLIP text weights only
    w_clip = l2_normalize(np.asarray(bundle.w_clip, dtype=np.float64))
    zs_acc = accuracy(zero_shot_classify(test, w_clip, 1.0), bundle.test_labels)

    gamma, nw_params, _ = tune_nw(bundle, budget, seed)
    support = l2_normalize(np.asarray(bundle.support_features, dtype=np.float64))
    onehot = one_hot(bundle.support_labels, bundle.n_classes)
    w_text = blend_text_priors(bundle.w_clip, bundle.w_gpt3, gamma)
    nw_acc = accuracy(
        nw_classify(test, support, onehot, w_text, nw_params, 1.0), bundle.test_labels
    )

    result = run_search(
        bundle, space=space, budget=budget, seed=seed, kind=kind, threads=threads, log_fn=log_fn
    )
    full_acc = _test_accuracy(bundle, result, kind)

    return Report(
        datasets=(dataset_name,),
        rows=(
            Report.make_row("zero_shot", [zs_acc]),
            Report.make_row("nw_cache", [nw_acc]),
            Report.make_row("rehark_full", [full_acc]),
        ),
    )
