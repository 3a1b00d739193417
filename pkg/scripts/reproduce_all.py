"""Run every acceptance computation through the CLI and write the reports.

    python scripts/reproduce_all.py [--out results]

Reports are written without wall times, so reruns are byte-identical.
Exit status is the number of failing runs.
"""

import argparse
import sys
from pathlib import Path

from binring.cli import main

RUNS = {
    "cobar_num": ["cobar", "num", "--window-n", "6", "--window-d", "8"],
    "cobar_num_table": ["cobar", "num", "--window-n", "6", "--window-d", "8", "--format", "csv"],
    "cobar_divided": ["cobar", "divided", "--window-n", "5", "--window-d", "6", "--format", "csv"],
    "bar_poly": ["bar", "poly", "--window-n", "6", "--window-d", "8"],
    "dualcheck": ["dualcheck", "num", "--window-n", "5", "--window-d", "8"],
    "space_circle": ["space", "circle"],
    "space_sphere2": ["space", "sphere2"],
    "space_torus": ["space", "torus"],
    "space_rp2": ["space", "rp2"],
    "kunneth_circle_circle": ["kunneth", "circle", "circle", "-T", "4"],
    "kunneth_circle_sphere2": ["kunneth", "circle", "sphere2", "-T", "4"],
    "alpha1": ["alpha1", "--samples", "500", "--window-d", "6", "--max-level", "3"],
    "binomiality_torus": ["binomiality", "torus", "--samples", "100"],
    "binomiality_rp2": ["binomiality", "rp2", "--samples", "100"],
    "acyclic": ["acyclic", "--samples", "50"],
    "conservativity": ["conservativity", "all", "--window-d", "5"],
    **{f"witt_{p}_{k}": ["witt", str(p), str(k)] for p, k in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))},
}


def run_all(out: Path) -> int:
    out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name, argv in RUNS.items():
        ext = "csv" if "csv" in argv else "json"
        code = main([*argv, "--no-timing", "--out", str(out / f"{name}.{ext}")])
        failed += code != 0
        print(f"{'ok  ' if code == 0 else 'FAIL'} {name} (exit {code})")
    return failed


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results")
    sys.exit(run_all(Path(parser.parse_args().out)))
