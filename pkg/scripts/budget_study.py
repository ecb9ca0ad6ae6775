#!/usr/bin/env python3
"""Search-budget sweep: best validation accuracy and its test accuracy as the
trial budget grows. Budgets share a seed, so each row extends the last."""

import argparse

from rehark import evaluate_split, load_bundle, make_synthetic_bundle, run_search
from rehark.kernel import KernelKind


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bundle", help="bundle manifest; omit for a synthetic one")
    ap.add_argument("--budgets", default="10,25,50,100,200")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kernel", choices=[k.value for k in KernelKind],
                    default=KernelKind.MULTISCALE_RBF.value)
    ap.add_argument("--threads", type=int, default=0)
    args = ap.parse_args()

    bundle = load_bundle(args.bundle) if args.bundle else make_synthetic_bundle(seed=args.seed)
    kind = KernelKind(args.kernel)
    budgets = sorted(int(b) for b in args.budgets.split(","))

    print("| budget | best val | test |")
    print("| --- | --- | --- |")
    for budget in budgets:
        result = run_search(bundle, budget=budget, seed=args.seed, kind=kind,
                            threads=args.threads)
        test_acc = evaluate_split(bundle, result.best.params, "test", kind)
        print(f"| {budget} | {100 * result.best.val_accuracy:.2f} | {100 * test_acc:.2f} |")


if __name__ == "__main__":
    main()
