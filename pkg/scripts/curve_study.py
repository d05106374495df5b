#!/usr/bin/env python3
"""
Run the error-curve study across the built-in targets and save the artifacts.

Sweeps the effective filter count M for each requested depth K, writes one
CSV per target, a combined SVG chart per depth, and a JSON file with the
qualitative checks (curve ordering, monotonicity, plateau values).

Usage:
    python3 scripts/curve_study.py --out out/curves --l 2 --K 4 5 6 --M-max 64
"""

import argparse
import json
from pathlib import Path

from memlens.charts import line_chart
from memlens.experiments import error_curve_study


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--out", default="out/curves", help="output directory")
    parser.add_argument("--l", type=int, default=2, help="filter size")
    parser.add_argument("--K", type=int, nargs="+", default=[4, 5, 6],
                        help="depths to sweep")
    parser.add_argument("--M-max", dest="M_max", type=int, default=64,
                        help="largest effective filter count")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    study = error_curve_study(l=args.l, K_list=tuple(args.K), M_max=args.M_max)

    for name, table in sorted(study.tables.items()):
        path = out / f"{name}_curves.csv"
        path.write_text(table.to_csv())
        print(f"wrote {path}")

    for K in sorted(args.K):
        series = []
        for name, table in sorted(study.tables.items()):
            Ms, uppers = table.curve(K)
            series.append((name, list(Ms), list(uppers)))
        chart = line_chart(series, title=f"upper bound vs M (l={args.l}, K={K})",
                           x_label="effective filters M",
                           y_label="upper bound", log_y=True)
        path = out / f"curves_K{K}.svg"
        path.write_text(chart)
        print(f"wrote {path}")

    summary = {"l": study.l, "checks": study.checks, "notes": study.notes}
    path = out / "study_summary.json"
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")

    for name, ok in sorted(study.checks.items()):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return 0 if study.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
