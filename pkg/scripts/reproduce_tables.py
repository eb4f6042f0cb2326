"""Windowed HH_n dimensions for every row of the summary table.

Writes one JSON report per (lambda, mu) row into the output directory and
prints a compact table. Exit status is 1 if any row disagrees.
"""

import argparse
import json
import pathlib
import sys

from qsl2hom.cli import run

ROWS = [
    ("1", "1"), ("q^2", "1"), ("1", "q"),
    ("q^-2", "1"), ("q^-3", "1"), ("q^-4", "1"),
    ("q^-1", "q"), ("q^-2", "q^2"), ("q^-1", "q^-1"), ("q^-2", "q^-2"),
    ("q^5", "q^7"), ("q^3", "q^-2"),
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reports")
    ap.add_argument("--q", default="generic")
    ap.add_argument("--I", type=int, default=4)
    ap.add_argument("--L", type=int, default=10)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    print(f"{'lambda':>8} {'mu':>6}  {'HH_0':>10} {'HH_1':>10} {'HH_2':>10} {'HH_3':>10}")
    for lam, mu in ROWS:
        code, text = run(["table", "--q", args.q, "--lambda", lam, "--mu", mu, "--I", str(args.I),
                          "--L", str(args.L), "--workers", str(args.workers), "--format", "json"])
        worst = max(worst, code)
        rep = json.loads(text)
        name = f"table_{lam}_{mu}_{args.q}.json".replace("^", "").replace("/", "over")
        (out / name).write_text(text + "\n")
        cells = []
        for r in rep["results"]:
            mark = "" if r["verdict"] == "pass" else "!"
            cells.append(f"{r['computed']}/{r['expected']}{mark}")
        print(f"{lam:>8} {mu:>6}  " + " ".join(f"{c:>10}" for c in cells))
    print("cells are computed/expected; ! marks a mismatch")
    return worst


if __name__ == "__main__":
    sys.exit(main())
