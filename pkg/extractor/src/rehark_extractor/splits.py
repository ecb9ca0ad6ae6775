"""Dataset split lists in the CoOp benchmark protocol.

A split file is JSON with keys train/val/test, each a list of
[image_path, label, class_name] rows.  Labels must cover 0..N-1 and map
to one class name each.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import IoFailure, SplitError

SPLIT_KEYS = ("train", "val", "test")


@dataclass(frozen=True)
class SplitItem:
    path: str
    label: int
    class_name: str


@dataclass(frozen=True)
class DatasetSplits:
    train: tuple[SplitItem, ...]
    val: tuple[SplitItem, ...]
    test: tuple[SplitItem, ...]
    class_names: tuple[str, ...]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def items(self, key: str) -> tuple[SplitItem, ...]:
        return getattr(self, key)


def _parse_items(rows, key: str) -> tuple[SplitItem, ...]:
    items = []
    for row in rows:
        if not (isinstance(row, (list, tuple)) and len(row) == 3):
            raise SplitError(f"{key}: expected [path, label, class_name] rows")
        path, label, class_name = row
        if not isinstance(label, int) or label < 0:
            raise SplitError(f"{key}: label {label!r} is not a class index")
        items.append(SplitItem(path=str(path), label=label, class_name=str(class_name)))
    return tuple(items)


def load_splits(path: str | Path) -> DatasetSplits:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"{path}: invalid JSON: {exc}") from exc
    missing = [k for k in SPLIT_KEYS if k not in payload]
    if missing:
        raise SplitError(f"{path}: missing split lists {', '.join(missing)}")

    parsed = {k: _parse_items(payload[k], k) for k in SPLIT_KEYS}
    by_label: dict[int, str] = {}
    for key in SPLIT_KEYS:
        for item in parsed[key]:
            seen = by_label.setdefault(item.label, item.class_name)
            if seen != item.class_name:
                raise SplitError(
                    f"label {item.label} maps to both {seen!r} and {item.class_name!r}"
                )
    if not by_label or sorted(by_label) != list(range(len(by_label))):
        raise SplitError("labels must cover 0..N-1 with no gaps")

    return DatasetSplits(
        train=parsed["train"],
        val=parsed["val"],
        test=parsed["test"],
        class_names=tuple(by_label[c] for c in sorted(by_label)),
    )


def sample_support(
    train: tuple[SplitItem, ...], n_classes: int, n_shots: int, seed: int
) -> tuple[SplitItem, ...]:
    """Draw exactly n_shots train items per class, seeded per class so the
    selection is independent of list order across classes."""
    if n_shots < 1:
        raise SplitError(f"n_shots={n_shots} must be >= 1")
    chosen: list[SplitItem] = []
    for c in range(n_classes):
        pool = [item for item in train if item.label == c]
        if len(pool) < n_shots:
            raise SplitError(
                f"class {c} has {len(pool)} train items, needs {n_shots}"
            )
        rng = np.random.default_rng([seed, c])
        picks = sorted(rng.choice(len(pool), size=n_shots, replace=False).tolist())
        chosen.extend(pool[i] for i in picks)
    return tuple(chosen)
