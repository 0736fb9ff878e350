"""CLI invocations whose JSON output is frozen under tests/golden.

Regenerate with ``python tests/golden_cases.py`` after an intended change.
"""

import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"

CASES = {
    "fan_p1": (["fan", "data/p1.json"], 0),
    "fan_overlapping": (["fan", "data/overlapping.json"], 1),
    "toric_a1_charts": (["toric", "data/a1.json", "--charts"], 0),
    "toric_p1_basechange_z": (["toric", "data/p1.json", "--basechange", "Z"], 0),
    "toric_p2_count": (["toric", "data/p2.json", "--count", "--q", "2,3,4,5"], 0),
    "toric_p1_points_f2": (["toric", "catalog:P1", "--points", "Fq:2"], 0),
    "toric_f1_count": (["toric", "catalog:F1", "--count", "--q", "2,3"], 0),
    "gln_3_f1": (["gln", "3", "F1"], 0),
    "gln_2_f3": (["gln", "2", "Fq:3"], 0),
    "gln_2_f1_over_f3": (["gln", "2", "Fq*:3"], 0),
    "gln_2_boolean": (["gln", "2", "B"], 0),
    "descent_identity": (["descent", "data/identity_cover.json"], 0),
    "descent_collapse": (["descent", "data/collapse_cover.json"], 1),
    "descent_search": (["descent", "--search", "--max-size", "2", "--bound", "2"], 0),
}


def run(args):
    proc = subprocess.run([sys.executable, "-m", "f1schemes", *args, "--format", "json"],
                          cwd=HERE, capture_output=True)
    return proc.returncode, proc.stdout


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name, (args, code) in CASES.items():
        got, out = run(args)
        if got != code:
            raise SystemExit(f"{name}: exit {got}, expected {code}")
        (GOLDEN / f"{name}.json").write_bytes(out)


if __name__ == "__main__":
    regenerate()
