#!/usr/bin/env python3
"""Kernel comparison: tune each kernel kind at the same budget and seed, then
score its best configuration on the test split."""

import argparse

from rehark import evaluate_split, load_bundle, make_synthetic_bundle, run_search
from rehark.kernel import KernelKind


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bundle", help="bundle manifest; omit for a synthetic one")
    ap.add_argument("--budget", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=0)
    args = ap.parse_args()

    bundle = load_bundle(args.bundle) if args.bundle else make_synthetic_bundle(seed=args.seed)

    print("| kernel | best val | test |")
    print("| --- | --- | --- |")
    for kind in KernelKind:
        result = run_search(bundle, budget=args.budget, seed=args.seed, kind=kind,
                            threads=args.threads)
        test_acc = evaluate_split(bundle, result.best.params, "test", kind)
        print(f"| {kind.value} | {100 * result.best.val_accuracy:.2f} | {100 * test_acc:.2f} |")


if __name__ == "__main__":
    main()
