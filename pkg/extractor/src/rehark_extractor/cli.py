"""Command-line extractor: dataset splits and prompt files in, bundle out.

Exit codes: 0 success, 1 data or model error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .encoders import ClipEncoder, SeededProjectionEncoder
from .errors import ExtractorError
from .extract import extract_bundle
from .prompts import PromptSet
from .splits import load_splits


def _shots_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--shots: {text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError("--shots must be >= 1")
    return value


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed: {text!r} is not an integer")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("--seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rehark-extract",
        description="Extract an embedding bundle in the rehark interchange format.",
    )
    parser.add_argument("--split", required=True, help="CoOp-protocol split JSON")
    parser.add_argument("--gpt3", required=True, help="class-to-descriptions JSON")
    parser.add_argument(
        "--clip-prompts",
        help="class-to-templates JSON (default: built-in template set)",
    )
    parser.add_argument("--images-root", help="directory image paths are relative to")
    parser.add_argument("--out", required=True, help="output bundle directory")
    parser.add_argument("--shots", type=_shots_value, default=1)
    parser.add_argument("--seed", type=_seed_value, default=0)
    parser.add_argument("--encoder", choices=("seeded", "clip"), default="seeded")
    parser.add_argument("--model-id", help="backbone id for --encoder clip")
    parser.add_argument("--width", type=int, default=64, help="seeded encoder width")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        splits = load_splits(args.split)
        if args.encoder == "clip":
            encoder = (
                ClipEncoder(args.model_id) if args.model_id else ClipEncoder()
            )
        else:
            encoder = SeededProjectionEncoder(width=args.width)
        gpt3 = PromptSet.from_file(args.gpt3, "gpt3_descriptions", splits.class_names)
        if args.clip_prompts:
            clip = PromptSet.from_file(
                args.clip_prompts, "clip_templates", splits.class_names
            )
        else:
            clip = PromptSet.from_templates(splits.class_names)
        manifest = extract_bundle(
            splits,
            clip,
            gpt3,
            encoder,
            args.out,
            n_shots=args.shots,
            seed=args.seed,
            images_root=args.images_root,
        )
    except (ExtractorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {manifest} N={splits.n_classes} K={args.shots} "
        f"d={encoder.width} encoder={encoder.model_id}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
