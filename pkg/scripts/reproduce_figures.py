"""Regenerate every canned figure dataset as CSV, one file per figure.

Usage (from the repo root, after `pip install -e .`):

  python scripts/reproduce_figures.py --outdir figure_data
  python scripts/reproduce_figures.py --only fig3 fig9

Each dataset is the same CSV the `figure` CLI subcommand emits; reruns are
byte-identical.  The script prints one line per figure with the row count
and how many rows carry an error code (singular grid points are reported,
not dropped), then runs the self-validation suite unless --skip-validate
is given.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from nearfield_crb.experiment_cli import FIGURES, main as cli_main
from nearfield_crb import validation


def summarize(path: str) -> tuple[int, int]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    flagged = sum(1 for row in rows if row["error_code"])
    return len(rows), flagged


def main() -> int:
    ap = argparse.ArgumentParser(description="Regenerate the figure datasets.")
    ap.add_argument("--outdir", default="figure_data", help="directory for the CSV files")
    ap.add_argument(
        "--only",
        nargs="+",
        choices=sorted(FIGURES),
        help="subset of figures (default: all)",
    )
    ap.add_argument(
        "--skip-validate",
        action="store_true",
        help="do not run the self-validation checks afterwards",
    )
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    names = args.only if args.only else sorted(FIGURES)
    for name in names:
        path = os.path.join(args.outdir, f"{name}.csv")
        rc = cli_main(["figure", name, "--out", path])
        if rc != 0:
            print(f"{name}: FAILED (exit {rc})", file=sys.stderr)
            return rc
        n_rows, flagged = summarize(path)
        note = f", {flagged} rows flagged" if flagged else ""
        print(f"{name}: {n_rows} rows -> {path}{note}")

    if args.skip_validate:
        return 0
    print()
    return validation.run_all(sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
