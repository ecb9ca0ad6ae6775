"""Command-line entry point: validate, adapt, search, ablate, compare, report.

Exit codes: 0 success, 1 validation or data error, 2 usage error.
Diagnostics go to stderr; results go to --out or stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import IoFailure, ReharkError
from .evaluation import Report, VARIANTS, compare_methods, emit_report, run_ablation
from .io_bundle import load_bundle
from .kernel import KernelKind
from .pipeline import HyperParams, evaluate_split
from .search import SearchResult, run_search


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed: {text!r} is not an integer")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("--seed must fit in an unsigned 64-bit integer")
    return value


def _budget_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--budget: {text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError("--budget must be >= 1")
    return value


def _threads_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--threads: {text!r} is not an integer")
    if value < 0:
        raise argparse.ArgumentTypeError("--threads must be >= 0 (0 = auto)")
    return value


def _variant_list(text: str) -> list[str]:
    names = [t.strip().lower() for t in text.split(",") if t.strip()]
    if not names:
        raise argparse.ArgumentTypeError("--variants: expected a comma-separated list")
    unknown = [n for n in names if n not in VARIANTS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"--variants: unknown {', '.join(map(repr, unknown))}; "
            f"choose from {', '.join(VARIANTS)}"
        )
    return names


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc}") from exc


def _log_line(line: str) -> None:
    print(line, file=sys.stderr)


def _dataset_name(bundle_path: str) -> str:
    p = Path(bundle_path)
    name = p.stem
    if name.lower() in {"manifest", "bundle"} and p.parent.name:
        name = p.parent.name
    return name or "dataset"


def _cmd_validate(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    print(
        f"ok: {args.bundle} N={bundle.n_classes} K={bundle.n_shots} d={bundle.dim} "
        f"(support {bundle.support_features.shape[0]}, "
        f"val {bundle.val_features.shape[0]}, test {bundle.test_features.shape[0]})"
    )
    return 0


def _cmd_adapt(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    if args.params is not None:
        try:
            raw = Path(args.params).read_text(encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot read {args.params}: {exc}") from exc
        params = HyperParams.from_dict(json.loads(raw))
    else:
        params = HyperParams()
    kind = KernelKind(args.kernel)
    payload = {
        "params": params.to_dict(),
        "kernel": kind.value,
        "val_accuracy": evaluate_split(bundle, params, "val", kind),
        "test_accuracy": evaluate_split(bundle, params, "test", kind),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    result = run_search(
        bundle,
        budget=args.budget,
        seed=args.seed,
        kind=KernelKind(args.kernel),
        threads=args.threads,
        log_fn=_log_line,
    )
    _emit(result.to_json(), args.out)
    return 0


def _cmd_ablate(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    report = run_ablation(
        bundle,
        budget=args.budget,
        seed=args.seed,
        variants=args.variants,
        kind=KernelKind(args.kernel),
        threads=args.threads,
        dataset_name=_dataset_name(args.bundle),
        log_fn=_log_line,
    )
    _emit(emit_report(report, args.format, None), args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    report = compare_methods(
        bundle,
        budget=args.budget,
        seed=args.seed,
        kind=KernelKind(args.kernel),
        threads=args.threads,
        dataset_name=_dataset_name(args.bundle),
        log_fn=_log_line,
    )
    _emit(emit_report(report, args.format, None), args.out)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {args.input}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IoFailure(f"{args.input}: invalid JSON: {exc}") from exc

    if isinstance(payload, dict) and "rows" in payload and "datasets" in payload:
        report = Report.from_json(text)
        _emit(emit_report(report, args.format, None), args.out)
        return 0
    if isinstance(payload, dict) and "history" in payload and "best" in payload:
        result = SearchResult.from_json(text)
        if args.format == "json":
            _emit(result.to_json(), args.out)
        else:
            summary = Report(
                datasets=("val",),
                rows=(Report.make_row("best", [result.best.val_accuracy]),),
            )
            _emit(emit_report(summary, args.format, None), args.out)
        return 0
    raise IoFailure(f"{args.input}: neither a report nor a search result JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rehark",
        description="Training-free few-shot adaptation over embedding bundles.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, budget: bool = True) -> None:
        p.add_argument("--bundle", required=True, help="bundle manifest path")
        if budget:
            p.add_argument("--seed", type=_seed_value, default=0)
            p.add_argument("--budget", type=_budget_value, default=1000)
            p.add_argument("--threads", type=_threads_value, default=0, help="0 = auto")
        p.add_argument(
            "--kernel",
            choices=[k.value for k in KernelKind],
            default=KernelKind.MULTISCALE_RBF.value,
        )
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("validate", help="load and check a bundle")
    p.add_argument("--bundle", required=True, help="bundle manifest path")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("adapt", help="fit and score one explicit configuration")
    common(p, budget=False)
    p.add_argument("--params", help="JSON file of hyperparameter overrides")
    p.set_defaults(func=_cmd_adapt)

    p = sub.add_parser("search", help="seeded random hyperparameter search")
    common(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("ablate", help="re-search under pinned ablation variants")
    common(p)
    p.add_argument("--variants", type=_variant_list, default=list(VARIANTS))
    p.add_argument("--format", choices=("markdown", "md", "csv", "json"), default="markdown")
    p.set_defaults(func=_cmd_ablate)

    p = sub.add_parser("compare", help="zero-shot vs cache baseline vs full pipeline")
    common(p)
    p.add_argument("--format", choices=("markdown", "md", "csv", "json"), default="markdown")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("report", help="re-format a results JSON")
    p.add_argument("input", help="report or search result JSON file")
    p.add_argument("--format", choices=("markdown", "md", "csv", "json"), default="markdown")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ReharkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
