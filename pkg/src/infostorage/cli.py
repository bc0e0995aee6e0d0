"""Command-line surface: data generation, analysis, k-sweeps, oracle queries.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
Errors are emitted as JSON on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import infodyn, procsim
from .symseq import Alphabet, EmbeddingConfig, SymbolSeries, count_joint

SCHEMA = "icais/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="infostorage",
        description=(
            "Active information storage, input-corrected storage, and "
            "interaction information for discrete driven time series."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="simulate an input process and unit to CSV")
    gen.add_argument("--process", required=True, help="bernoulli:p=<f> | markov:p_stay=<f>")
    gen.add_argument("--unit", help="forwarding | xor[:init=<0|1>]")
    gen.add_argument("--n", type=int, required=True, help="number of time steps")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="CSV output path")

    def add_analysis_args(p, k_range_only=False):
        p.add_argument("--data", required=True, help="CSV input path")
        p.add_argument(
            "--measure",
            default="all",
            choices=["ais", "icais", "interaction", "all"],
        )
        if k_range_only:
            p.add_argument("--k-range", required=True, help="inclusive range, e.g. 1:4")
        else:
            p.add_argument("-k", type=int, required=True, help="history length")
        p.add_argument("--cols", default="output", help="comma list of output columns")
        p.add_argument(
            "--input-col",
            help="input column name; comma list for per-process inputs",
        )
        p.add_argument("--input-lag", type=int, default=0)
        p.add_argument("--format", choices=["json", "csv"], default=None)

    ana = sub.add_parser("analyze", help="estimate measures from a CSV file")
    add_analysis_args(ana)
    ana.add_argument("--local", action="store_true", help="include local profiles")

    swp = sub.add_parser("sweep", help="estimate measures across history lengths")
    add_analysis_args(swp, k_range_only=True)

    orc = sub.add_parser("oracle", help="exact values from the Markov-chain oracle")
    orc.add_argument("--process", required=True)
    orc.add_argument("--unit", required=True)
    orc.add_argument(
        "--measure", default="all", choices=["ais", "icais", "interaction", "all"]
    )
    group = orc.add_mutually_exclusive_group(required=True)
    group.add_argument("-k", type=int)
    group.add_argument("--k-range", help="inclusive range, e.g. 1:4")
    orc.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


def _measures(name: str, has_input: bool) -> list[str]:
    names = list(infodyn.MEASURES) if name == "all" else [name]
    if not has_input:
        needing = [m for m in names if m in ("icais", "interaction")]
        if name == "all":
            names = [m for m in names if m not in needing]
        elif needing:
            raise UsageError(
                f"measure '{name}' conditions on the input; pass --input-col "
                "to name the input column"
            )
    return names


def _parse_k_range(text: str) -> list[int]:
    lo, sep, hi = text.partition(":")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise UsageError(f"bad k range {text!r}; expected <lo>:<hi>")
    if lo_i < 1 or hi_i < lo_i:
        raise UsageError(f"bad k range {text!r}; bounds must be positive and ordered")
    return list(range(lo_i, hi_i + 1))


def _read_csv(path: str) -> tuple[list[str], dict[str, np.ndarray]]:
    p = Path(path)
    if not p.exists():
        raise DataError(f"no such file: {path}")
    with p.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"empty file: {path}")
        columns = [name.strip() for name in header]
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(columns):
                raise DataError(f"{path}:{lineno}: expected {len(columns)} fields")
            parsed = []
            for name, cell in zip(columns, row):
                try:
                    parsed.append(int(cell))
                except ValueError:
                    raise DataError(
                        f"{path}:{lineno}: non-integer value {cell!r} in column {name!r}"
                    )
            rows.append(parsed)
    if not rows:
        raise DataError(f"no data rows in {path}")
    arr = np.asarray(rows, dtype=np.int64)
    return columns, {name: arr[:, i] for i, name in enumerate(columns)}


def _series_from_columns(data: dict[str, np.ndarray], names: list[str]) -> list[SymbolSeries]:
    lo = min(int(data[c].min()) for c in names)
    hi = max(int(data[c].max()) for c in names)
    if lo < 0:
        raise DataError(f"negative symbol in column(s) {names}")
    alphabet = Alphabet(max(hi + 1, 2))
    return [SymbolSeries(alphabet, data[c]) for c in names]


def _result_dict(res: infodyn.MeasureResult, include_local: bool = False) -> dict:
    out = {
        "schema": SCHEMA,
        "measure": res.measure,
        "k": res.k,
        "average_bits": res.average_bits,
        "n_transitions": res.n_transitions,
        "source": res.source,
    }
    if include_local and res.local is not None:
        out["local"] = [float(v) for v in res.local.values]
        out["start_index"] = res.local.start_index
    return out


def _emit(results: list[dict], fmt: str, include_local: bool, out=None):
    out = out or sys.stdout
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["measure", "k", "average_bits", "n_transitions"])
        for r in results:
            writer.writerow([r["measure"], r["k"], f"{r['average_bits']:.15g}", r["n_transitions"]])
    else:
        for r in results:
            if not include_local:
                r.pop("local", None)
                r.pop("start_index", None)
            out.write(json.dumps(r) + "\n")


def cmd_generate(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    proc = procsim.parse_process_spec(args.process, seed=args.seed)
    u = procsim.generate_input(proc, args.n)
    unit_spec = procsim.parse_unit_spec(args.unit) if args.unit else None
    out_path = Path(args.out)
    try:
        with out_path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            if unit_spec is not None:
                x = procsim.simulate_unit(unit_spec, u)
                writer.writerow(["input", "output"])
                writer.writerows(zip(u.data.tolist(), x.data.tolist()))
            else:
                writer.writerow(["output"])
                writer.writerows([v] for v in u.data.tolist())
        meta = {
            "schema": SCHEMA,
            "process": args.process,
            "unit": args.unit,
            "seed": args.seed,
            "n": args.n,
            "prng": "numpy Philox, Generator(Philox(seed))",
        }
        meta_path = out_path.with_name(out_path.name + ".meta.json")
        meta_path.write_text(json.dumps(meta, indent=2) + "\n")
    except OSError as e:
        raise DataError(f"cannot write {args.out}: {e}")
    return EXIT_OK


def _load_analysis_inputs(args):
    columns, data = _read_csv(args.data)
    col_names = [c.strip() for c in args.cols.split(",") if c.strip()]
    if not col_names:
        raise UsageError("--cols must name at least one column")
    input_names = (
        [c.strip() for c in args.input_col.split(",") if c.strip()]
        if args.input_col
        else []
    )
    if input_names and len(input_names) not in (1, len(col_names)):
        raise UsageError(
            "--input-col must name one shared column or one per output column"
        )
    missing = [c for c in col_names + input_names if c not in data]
    if missing:
        raise DataError(f"missing column(s) {missing}; file has {columns}")
    xs = _series_from_columns(data, col_names)
    if input_names:
        shared = _series_from_columns(data, input_names)
        us = shared * len(col_names) if len(input_names) == 1 else shared
    else:
        us = [None] * len(col_names)
    return xs, us


def cmd_analyze(args) -> int:
    xs, us = _load_analysis_inputs(args)
    measures = _measures(args.measure, us[0] is not None)
    if not measures:
        raise UsageError(
            "no computable measures: icais/interaction need --input-col"
        )
    if args.k < 1:
        raise UsageError("-k must be >= 1")
    cfg = EmbeddingConfig(args.k, args.input_lag)
    try:
        tables = [count_joint(x, u, cfg) for x, u in zip(xs, us)]
        results = []
        for m in measures:
            if len(tables) == 1:
                res = infodyn.compute(m, tables[0], local=args.local)
            else:
                profiles = [infodyn.local_profile(m, t) for t in tables]
                res = infodyn.ensemble_average(profiles)
            results.append(_result_dict(res, include_local=args.local))
    except ValueError as e:
        raise DataError(str(e))
    _emit(results, args.format or "json", args.local)
    return EXIT_OK


def cmd_sweep(args) -> int:
    xs, us = _load_analysis_inputs(args)
    measures = _measures(args.measure, us[0] is not None)
    if not measures:
        raise UsageError("no computable measures: icais/interaction need --input-col")
    ks = _parse_k_range(args.k_range)
    try:
        per_col = [
            infodyn.sweep_k(x, u, ks, measures, input_lag=args.input_lag)
            for x, u in zip(xs, us)
        ]
    except ValueError as e:
        raise DataError(str(e))
    results = []
    # Equal-length columns: the ensemble average is the mean over columns.
    for i in range(len(per_col[0])):
        group = [col[i] for col in per_col]
        first = group[0]
        results.append(
            {
                "schema": SCHEMA,
                "measure": first.measure,
                "k": first.k,
                "average_bits": float(np.mean([g.average_bits for g in group])),
                "n_transitions": int(sum(g.n_transitions for g in group)),
                "source": "empirical",
            }
        )
    _emit(results, args.format or "csv", include_local=False)
    return EXIT_OK


def cmd_oracle(args) -> int:
    proc = procsim.parse_process_spec(args.process)
    unit = procsim.parse_unit_spec(args.unit)
    measures = list(infodyn.MEASURES) if args.measure == "all" else [args.measure]
    ks = [args.k] if args.k is not None else _parse_k_range(args.k_range)
    if args.k is not None and args.k < 1:
        raise UsageError("-k must be >= 1")
    results = []
    for k in ks:
        try:
            joint = procsim.oracle_joint(proc, unit, k)
        except ValueError as e:
            raise UsageError(str(e))
        for m in measures:
            res = infodyn.compute(m, joint, k=k)
            results.append(_result_dict(res))
    _emit(results, args.format, include_local=False)
    return EXIT_OK


_COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "oracle": cmd_oracle,
}


def _emit_error(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as e:
        _emit_error("usage", str(e))
        return EXIT_USAGE
    except DataError as e:
        _emit_error("data", str(e))
        return EXIT_DATA
    except procsim.ConvergenceError as e:
        _emit_error("numerical", str(e))
        return EXIT_NUMERICAL
    except ValueError as e:
        _emit_error("usage", str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
