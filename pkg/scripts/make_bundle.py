#!/usr/bin/env python3
"""Generate a seeded synthetic bundle directory for experiments and demos."""

import argparse

from rehark import make_synthetic_bundle, save_bundle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--classes", type=int, default=8)
    ap.add_argument("--dim", type=int, default=32)
    ap.add_argument("--shots", type=int, default=1)
    ap.add_argument("--val", type=int, default=25, help="val queries per class")
    ap.add_argument("--test", type=int, default=50, help="test queries per class")
    ap.add_argument("--support-noise", type=float, default=0.35)
    ap.add_argument("--text-noise", type=float, default=0.55)
    ap.add_argument("--query-noise", type=float, default=0.45)
    ap.add_argument("--query-shift", type=float, default=0.15)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    bundle = make_synthetic_bundle(
        n_classes=args.classes,
        dim=args.dim,
        n_shots=args.shots,
        n_val=args.val,
        n_test=args.test,
        support_noise=args.support_noise,
        text_noise=args.text_noise,
        query_noise=args.query_noise,
        query_shift=args.query_shift,
        seed=args.seed,
    )
    manifest = save_bundle(bundle, args.out)
    print(manifest)


if __name__ == "__main__":
    main()
