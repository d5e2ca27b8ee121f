"""Replicated benchmark over a small grid via the command-line entry point:
simulate -> run -> evaluate for every cell, with per-cell mean rows appended.
Re-running with the same output file resumes, skipping completed replications.

Run with: python3 demos/benchmark_grid.py
"""

from pathlib import Path

from mplgraph.cli import main

out = Path("bench_demo.csv")
code = main(["bench",
             "--p", "10",
             "--kind", "random",
             "--regime", "sparse",
             "--n", "350",
             "--algorithms", "bd,rj",
             "--reps", "8",
             "--iterations", "30000",
             "--seed-base", "42",
             "--out", str(out)])
assert code == 0

print(out.read_text())
print("mean rows are tagged rep=mean; rerunning this script resumes "
      "from the completed rows in bench_demo.csv")
