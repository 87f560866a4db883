#!/usr/bin/env python3
"""Run the full validation suite at its headline configurations.

Writes one JSON and one CSV file per experiment under --outdir (default
results/) and prints a summary table.  Exits nonzero if any experiment
fails its criterion.
"""

import argparse
import pathlib
import sys

from srhtlab.experiments import (
    run_chernoff_validation,
    run_coupon_trials,
    run_embedding_trials,
    run_flattening_trials,
    run_mgf_domination,
    run_row_norm_trials,
    summaries_to_csv,
    summaries_to_json,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--outdir", default="results")
    parser.add_argument(
        "--quick", action="store_true", help="shrink trial counts for a fast smoke run"
    )
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    scale = 0.05 if args.quick else 1.0
    deltas = [round(0.1 * i, 1) for i in range(1, 10)]

    runs = {
        "embedding": lambda: [
            run_embedding_trials(65536, 16, trials=max(10, int(200 * scale)), seed=args.seed)
        ],
        "rownorm": lambda: [
            run_row_norm_trials(4096, 16, 16.0, trials=max(50, int(2000 * scale)), seed=args.seed)
        ],
        "flatten": lambda: [
            run_flattening_trials(1024, trials=max(50, int(1000 * scale)), seed=args.seed)
        ],
        "coupon": lambda: run_coupon_trials(
            8, [8, 12, 17, 24], trials=max(200, int(10_000 * scale)), seed=args.seed
        ),
        "chernoff": lambda: run_chernoff_validation(
            16, 2, 6, deltas, seed=args.seed, mode="exhaustive"
        ),
        "mgf": lambda: run_mgf_domination(
            8, 2, 3, [0.5, 1.0, 2.0], seed=args.seed, mode="exhaustive"
        ),
    }

    all_ok = True
    print(f"{'experiment':32s} {'empirical':>10s} {'bound':>10s} {'passed':>7s} {'secs':>7s}")
    for name, run in runs.items():
        summaries = run()
        (outdir / f"{name}.json").write_text(summaries_to_json(summaries))
        (outdir / f"{name}.csv").write_text(summaries_to_csv(summaries))
        for s in summaries:
            all_ok &= s.passed
            print(
                f"{s.name:32s} {s.empirical_frequency:10.4f} {s.analytic_bound:10.4f}"
                f" {str(s.passed):>7s} {s.elapsed_seconds:7.1f}"
            )
    print(f"\nwrote {len(runs)} experiment reports to {outdir}/")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
