"""Prompt sets: CLIP template ensembles and GPT-3 description files.

Descriptions are always read from static JSON (one object mapping class
name to a list of strings), never fetched live.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import EmptyClassPrompts, IoFailure

SOURCES = ("clip_templates", "gpt3_descriptions")

# one generic template set used for every dataset unless a per-dataset
# JSON file overrides it; the choice is documented, not tuned
DEFAULT_TEMPLATES = (
    "a photo of a {}.",
    "a photo of the {}.",
    "a cropped photo of a {}.",
    "a close-up photo of a {}.",
    "a bright photo of a {}.",
    "a dark photo of a {}.",
    "a low resolution photo of a {}.",
)


@dataclass(frozen=True)
class PromptSet:
    """Per-class description lists for one prompt source."""

    source: str
    class_names: tuple[str, ...]
    descriptions: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"source {self.source!r} not in {SOURCES}")
        if len(self.descriptions) != len(self.class_names):
            raise ValueError(
                f"{len(self.descriptions)} description lists for "
                f"{len(self.class_names)} classes"
            )
        for name, descs in zip(self.class_names, self.descriptions):
            if not descs or any(not d.strip() for d in descs):
                raise EmptyClassPrompts(
                    f"class {name!r} has no usable {self.source} description"
                )

    @classmethod
    def from_templates(
        cls,
        class_names: Iterable[str],
        templates: tuple[str, ...] = DEFAULT_TEMPLATES,
    ) -> "PromptSet":
        """Render each template with the class name, underscores spaced."""
        names = tuple(class_names)
        return cls(
            source="clip_templates",
            class_names=names,
            descriptions=tuple(
                tuple(t.format(name.replace("_", " ")) for t in templates)
                for name in names
            ),
        )

    @classmethod
    def from_mapping(
        cls, mapping: Mapping, source: str, class_names: Iterable[str] | None = None
    ) -> "PromptSet":
        names = tuple(class_names) if class_names is not None else tuple(sorted(mapping))
        missing = [n for n in names if n not in mapping]
        if missing:
            raise EmptyClassPrompts(f"no {source} entry for {', '.join(missing)}")
        return cls(
            source=source,
            class_names=names,
            descriptions=tuple(tuple(str(d) for d in mapping[n]) for n in names),
        )

    @classmethod
    def from_file(
        cls, path: str | Path, source: str, class_names: Iterable[str] | None = None
    ) -> "PromptSet":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise IoFailure(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise IoFailure(f"{path}: expected an object mapping class to strings")
        return cls.from_mapping(payload, source, class_names)
