"""Seeded random hyperparameter search maximizing validation accuracy.

Each trial draws from its own generator seeded by (seed, trial_index), so
histories are schedule-independent and any shorter budget is an exact
prefix of a longer one under the same seed.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from .errors import ConstraintConflict, InvalidBudget
from .io_bundle import Bundle
from .kernel import KernelKind
from .pipeline import HyperParams, evaluate_split

# sampling consumes draws in this exact order; pinned fields consume none
PARAM_ORDER = (
    "p",
    "gamma",
    "omega",
    "eta",
    "alpha_r",
    "lam",
    "beta1",
    "beta2",
    "pi",
    "sigma_zs",
    "augment_enabled",
)
LOG_FIELDS = frozenset({"lam", "beta1", "beta2"})


@dataclass(frozen=True)
class SearchSpace:
    """Per-parameter sampling ranges; lam and the betas are log-uniform."""

    ranges: Mapping[str, tuple[float, float]] = field(
        default_factory=lambda: dict(HyperParams.RANGES)
    )

    def bounds(self, name: str) -> tuple[float, float]:
        return self.ranges[name]


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    params: HyperParams
    val_accuracy: float
    wall_time_ms: int


@dataclass(frozen=True)
class SearchResult:
    best: TrialRecord
    history: tuple[TrialRecord, ...]
    seed: int
    kind: KernelKind = KernelKind.MULTISCALE_RBF

    @property
    def budget(self) -> int:
        return len(self.history)

    def to_json(self, include_timing: bool = False) -> str:
        """Canonical JSON. Wall times are runtime telemetry and are left out
        by default so identical seeds serialize byte-identically."""

        def record(t: TrialRecord) -> dict:
            row = {
                "trial_index": t.trial_index,
                "val_accuracy": t.val_accuracy,
                "params": {name: getattr(t.params, name) for name in PARAM_ORDER},
            }
            if include_timing:
                row["wall_time_ms"] = t.wall_time_ms
            return row

        payload = {
            "seed": self.seed,
            "budget": self.budget,
            "kernel": self.kind.value,
            "best": record(self.best),
            "history": [record(t) for t in self.history],
        }
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SearchResult":
        payload = json.loads(text)

        def record(row: dict) -> TrialRecord:
            return TrialRecord(
                trial_index=int(row["trial_index"]),
                params=HyperParams.from_dict(row["params"]),
                val_accuracy=float(row["val_accuracy"]),
                wall_time_ms=int(row.get("wall_time_ms", 0)),
            )

        return cls(
            best=record(payload["best"]),
            history=tuple(record(r) for r in payload["history"]),
            seed=int(payload["seed"]),
            kind=KernelKind(payload.get("kernel", KernelKind.MULTISCALE_RBF.value)),
        )

    def save(self, path: str | Path, include_timing: bool = False) -> None:
        Path(path).write_text(self.to_json(include_timing), encoding="utf-8")


def validate_constraints(space: SearchSpace, pinned: Mapping) -> None:
    """Reject pins on unknown parameters or values outside the space."""
    for name, value in pinned.items():
        if name not in PARAM_ORDER:
            raise ConstraintConflict(f"unknown parameter {name!r}")
        if name == "augment_enabled":
            if not isinstance(value, bool):
                raise ConstraintConflict(f"augment_enabled must be a bool, got {value!r}")
            continue
        lo, hi = space.bounds(name)
        if not lo <= value <= hi:
            raise ConstraintConflict(f"pinned {name}={value} outside [{lo}, {hi}]")


def sample_params(
    rng: np.random.Generator, space: SearchSpace, pinned: Mapping | None = None
) -> HyperParams:
    """Draw one parameter set: uniform on linear ranges, log-uniform on
    lam/beta1/beta2, a fair coin for the augmentation flag.  Pinned fields
    take their fixed value and draw nothing from the stream."""
    pinned = pinned or {}
    values: dict = {}
    for name in PARAM_ORDER:
        if name in pinned:
            values[name] = pinned[name]
            continue
        if name == "augment_enabled":
            values[name] = bool(rng.random() < 0.5)
            continue
        lo, hi = space.bounds(name)
        if name in LOG_FIELDS:
            values[name] = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        else:
            values[name] = float(rng.uniform(lo, hi))
    return HyperParams(**values)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial_index])


def run_search(
    bundle: Bundle,
    space: SearchSpace | None = None,
    budget: int = 1000,
    seed: int = 0,
    pinned: Mapping | None = None,
    kind: KernelKind = KernelKind.MULTISCALE_RBF,
    threads: int = 1,
    log_fn: Callable[[str], None] | None = None,
) -> SearchResult:
    """Evaluate ``budget`` sampled configurations on the validation split.

    Deterministic given (seed, bundle, space, pinned, budget); the best
    trial is the highest validation accuracy, earliest index on ties.
    """
    if budget < 1:
        raise InvalidBudget(f"budget={budget} must be >= 1")
    space = space or SearchSpace()
    pinned = dict(pinned or {})
    validate_constraints(space, pinned)

    def run_trial(i: int) -> TrialRecord:
        start = time.perf_counter()
        params = sample_params(trial_rng(seed, i), space, pinned)
        acc = evaluate_split(bundle, params, "val", kind)
        elapsed_ms = int(round((time.perf_counter() - start) * 1000))
        return TrialRecord(i, params, acc, elapsed_ms)

    history: list[TrialRecord] = []
    best: TrialRecord | None = None

    def collect(t: TrialRecord) -> None:
        nonlocal best
        history.append(t)
        if best is None or t.val_accuracy > best.val_accuracy:
            best = t
        if log_fn is not None:
            log_fn(
                f"trial {t.trial_index + 1}/{budget} "
                f"acc={t.val_accuracy:.4f} best={best.val_accuracy:.4f}"
            )

    if threads == 1:
        for i in range(budget):
            collect(run_trial(i))
    else:
        workers = threads if threads > 0 else None
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for t in pool.map(run_trial, range(budget)):
                collect(t)

    return SearchResult(best=best, history=tuple(history), seed=seed, kind=kind)
