"""End-to-end CLI workflow: generate, analyze, sweep, and oracle queries.

Runs the `infostorage` command-line interface programmatically in a
temporary directory; every command here works identically from a shell.
"""

import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args):
    cmd = [sys.executable, "-m", "infostorage.cli", *args]
    print("$ infostorage " + " ".join(args))
    out = subprocess.run(cmd, capture_output=True, text=True)
    print(out.stdout, end="")
    if out.returncode != 0:
        print(out.stderr, end="")
    print()
    return out


with tempfile.TemporaryDirectory() as tmp:
    data = str(Path(tmp) / "xor_run.csv")

    run(
        "generate", "--process", "bernoulli:p=0.5", "--unit", "xor",
        "--n", "100000", "--seed", "7", "--out", data,
    )
    print(f"(wrote {data} and {data}.meta.json)\n")

    run("analyze", "--data", data, "--measure", "all", "-k", "1", "--input-col", "input")

    run(
        "sweep", "--data", data, "--measure", "icais", "--k-range", "1:3",
        "--input-col", "input",
    )

    run(
        "oracle", "--process", "markov:p_stay=0.7", "--unit", "forwarding",
        "--measure", "all", "-k", "1",
    )
