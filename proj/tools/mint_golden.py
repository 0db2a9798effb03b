#!/usr/bin/env python3
"""Regenerate tests/golden_report.json.

The golden report freezes self-computed, stability-tracked quantities: the
mean-value coefficient theta on a reference window, the lemma 1/2 deviation
factors, and the sweep ratios per decade of T.  Tests recompute them and
compare against the frozen values, so an evaluator or quadrature regression
shows up even where no external oracle exists.  Run from the repository root
after building:

    python3 tools/mint_golden.py [path/to/zcurve]
"""
import json
import os
import subprocess
import sys

BIN = sys.argv[1] if len(sys.argv) > 1 else os.path.join("build", "zcurve")
OUT = os.path.join(os.path.dirname(__file__), "..", "tests",
                   "golden_report.json")


def run(*args):
    proc = subprocess.run([BIN, *args], check=True, capture_output=True,
                          text=True)
    return json.loads(proc.stdout)


def slim(report):
    keys = ("variant", "lhs", "main_term", "normalized_deviation", "ratio")
    return {k: report[k] for k in keys}


def main():
    theorem = run("verify", "theorem", "--T", "1000", "--H", "100",
                  "--allow-wide")
    lemma1 = run("verify", "lemma1", "--T", "10000", "--H", "100",
                 "--tau", "0")
    lemma2 = run("verify", "lemma2", "--T", "10000", "--H", "100")
    sweep = run("sweep", "--T-list", "1000,10000,100000,1000000",
                "--H-rule", "T^0.24")

    golden = {
        "schema_version": "1",
        "kind": "golden_report",
        "theta_window_1000_100": theorem["theta"],
        "lemma1_tau0_10000_100": [slim(r) for r in lemma1["reports"]],
        "lemma2_pi2_10000_100": [slim(r) for r in lemma2["reports"]],
        "sweep_p024": {
            "T": [e["T"] for e in sweep["entries"]],
            "ratio_literal": [e["report"]["ratio_literal"]
                              for e in sweep["entries"]],
            "ratio_aligned": [e["report"]["ratio_aligned"]
                              for e in sweep["entries"]],
            "aligned_weakly_decreasing": sweep["aligned_weakly_decreasing"],
        },
    }
    with open(OUT, "w") as f:
        json.dump(golden, f, indent=2)
        f.write("\n")
    print(f"wrote {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
