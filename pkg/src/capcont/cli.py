"""Command-line front end.

Subcommands map one-to-one onto the library: norm (diamond distance),
entropy and info (single evaluations), capacity (maximized proxies),
verify (bound harnesses), demo (trend tables), assisted (mixing
arithmetic).  Channels are given either as "name:key=val,..." specs or as
paths to JSON files {"d_in", "d_out", "kraus"} with row-major [re, im]
pairs per operator; states and ensembles come from JSON files documented
on their loaders.

Reports carry a versioned envelope (schema, tool version, seed,
tolerances) and are emitted as deterministic JSON (sorted keys, no
timestamps), CSV for trend tables, or plain text.  Identical invocations
produce byte-identical output.  Exit codes: 0 success, 1 operational
error, 2 at least one bound violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .assisted import (
    erasure_q2,
    erasure_qb_bounds,
    mutual_gap_bound,
    simulation_upper_bound,
)
from .capopt import (
    n_copy_coherent_information,
    n_copy_holevo,
    n_copy_private,
)
from .channels import (
    QuantumChannel,
    channel_from_dict,
    constant_channel,
    dephasing,
    depolarizing,
    erasure,
    identity,
    truncated_classical_example,
    truncated_quantum_example,
)
from .continuity import (
    BoundReport,
    CorollarySettings,
    discontinuity_demo,
    verify_af,
    verify_capacity_differences,
    verify_fannes,
    verify_output_entropy,
)
from .distance import (
    TAU_SDP,
    HermitianPreservingMap,
    diamond_distance,
    diamond_lower_probe,
)
from .entropic import (
    TAU_ENT,
    Ensemble,
    coherent_information,
    holevo_information,
    private_information,
    von_neumann_entropy,
)
from .errors import (
    ArgumentError,
    CapcontError,
    CPViolationError,
    DimensionError,
    NumericError,
    TPViolationError,
)
from .linalg import DensityMatrix

EXIT_OK = 0
EXIT_ERROR = 1       # operational failure: bad input, solver failure, I/O
EXIT_VIOLATION = 2   # a verified bound was violated beyond tolerance

CSV_COLUMNS = [
    "n",
    "diamond_eps",
    "two_over_log_n",
    "classical_lb",
    "quantum_lb",
    "corollary_bound",
]


class SpecError(CapcontError):
    """Input that the CLI cannot turn into a run, with a stable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors surface as SpecError, not SystemExit."""

    def error(self, message):
        raise SpecError("usage", message)


# ---------------------------------------------------------------------------
# input parsing

_CHANNEL_FACTORIES = {
    "identity": (identity, {"d": int}),
    "constant": (constant_channel, {"d": int}),
    "erasure": (erasure, {"d": int, "p": float}),
    "depolarizing": (depolarizing, {"d": int, "p": float}),
    "dephasing": (dephasing, {"p": float}),
    "truncated-classical": (truncated_classical_example, {"n": int}),
    "truncated-quantum": (truncated_quantum_example, {"n": int}),
}


def parse_channel_spec(text: str) -> QuantumChannel:
    """Channel from "name:key=val,..." or from a channel JSON file.

    Error codes: unknown-name, bad-parameter, malformed-json,
    malformed-channel, cptp-violation.
    """
    name, sep, params = text.partition(":")
    if sep and name in _CHANNEL_FACTORIES:
        factory, schema = _CHANNEL_FACTORIES[name]
        kwargs = {}
        for item in params.split(","):
            key, eq, raw = item.partition("=")
            if not eq or key not in schema or key in kwargs:
                raise SpecError(
                    "bad-parameter", f"cannot parse {item!r} for channel {name!r}"
                )
            try:
                kwargs[key] = schema[key](raw)
            except ValueError as exc:
                raise SpecError("bad-parameter", f"{key}={raw!r}: {exc}") from exc
        if set(kwargs) != set(schema):
            missing = sorted(set(schema) - set(kwargs))
            raise SpecError("bad-parameter", f"channel {name!r} needs {missing}")
        try:
            return factory(**kwargs)
        except (ArgumentError, DimensionError) as exc:
            raise SpecError("bad-parameter", str(exc)) from exc
    if sep and not Path(text).is_file():
        raise SpecError("unknown-name", f"unknown channel name {name!r}")
    data = _load_json(text)
    try:
        return channel_from_dict(data)
    except (TPViolationError, CPViolationError) as exc:
        raise SpecError("cptp-violation", str(exc)) from exc
    except (ArgumentError, DimensionError) as exc:
        raise SpecError("malformed-channel", str(exc)) from exc


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError("io", f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError("malformed-json", f"{path!r}: {exc}") from exc


def _complex_column(raw: object, what: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise SpecError(
            "malformed-state", f"{what} must be a list of [re, im] pairs"
        )
    return arr[:, 0] + 1j * arr[:, 1]


def state_from_dict(data: dict) -> DensityMatrix:
    """State from {"matrix": [[re, im], ...] row-major, "dims": [...]?}."""
    if not isinstance(data, dict) or "matrix" not in data:
        raise SpecError("malformed-state", 'state file needs a "matrix" entry')
    flat = _complex_column(data["matrix"], "matrix")
    d = math.isqrt(flat.size)
    if d * d != flat.size:
        raise SpecError("malformed-state", f"matrix length {flat.size} is not square")
    dims = tuple(int(x) for x in data["dims"]) if "dims" in data else None
    try:
        return DensityMatrix(flat.reshape(d, d), dims)
    except (ArgumentError, DimensionError) as exc:
        raise SpecError("malformed-state", str(exc)) from exc


def ensemble_from_dict(data: dict) -> Ensemble:
    """Ensemble from {"probabilities": [...], "states": [state dict, ...]}."""
    if not isinstance(data, dict) or "probabilities" not in data or "states" not in data:
        raise SpecError(
            "malformed-ensemble",
            'ensemble file needs "probabilities" and "states" entries',
        )
    probs = data["probabilities"]
    states = data["states"]
    if not isinstance(states, list) or len(probs) != len(states):
        raise SpecError(
            "malformed-ensemble", "probabilities and states must have equal length"
        )
    try:
        return Ensemble(
            [(float(p), state_from_dict(s)) for p, s in zip(probs, states)]
        )
    except (ArgumentError, DimensionError) as exc:
        raise SpecError("malformed-ensemble", str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, result dict, csv rows or None)

def _cmd_norm(args) -> tuple[int, dict, None]:
    a = parse_channel_spec(args.a)
    b = parse_channel_spec(args.b)
    res = diamond_distance(a, b)
    result = {
        "metric": "diamond",
        "value": res.value,
        "lower_bound": res.dual_value,
        "iterations": res.iterations,
        "status": res.status,
        "rel_gap": res.rel_gap,
        "certified": res.certified(args.tol_dist),
    }
    if args.probe_trials > 0:
        result["probe_lower_bound"] = diamond_lower_probe(
            HermitianPreservingMap.difference(a, b), args.probe_trials, args.seed
        )
    return EXIT_OK, result, None


def _cmd_entropy(args) -> tuple[int, dict, None]:
    state = state_from_dict(_load_json(args.state))
    return (
        EXIT_OK,
        {"entropy": von_neumann_entropy(state), "dims": list(state.dims)},
        None,
    )


def _cmd_info(args) -> tuple[int, dict, None]:
    ch = parse_channel_spec(args.channel)
    data = _load_json(args.input)
    if args.kind == "coherent":
        value = coherent_information(ch, state_from_dict(data))
    elif args.kind == "holevo":
        value = holevo_information(ch, ensemble_from_dict(data))
    else:
        value = private_information(ch, ensemble_from_dict(data))
    return EXIT_OK, {"kind": args.kind, "value": value}, None


def _cmd_capacity(args) -> tuple[int, dict, None]:
    ch = parse_channel_spec(args.channel)
    result = {"kind": args.kind, "n": args.n}
    if args.kind == "coherent":
        rep = n_copy_coherent_information(
            ch, args.n, restarts=args.restarts, iters=args.iters, seed=args.seed
        )
    else:
        size = args.ensemble_size if args.ensemble_size else ch.d_in**2
        runner = n_copy_holevo if args.kind == "holevo" else n_copy_private
        rep = runner(
            ch, args.n, size, restarts=args.restarts, iters=args.iters, seed=args.seed
        )
        result["ensemble_size"] = size
    result.update(
        per_copy_value=rep.best_value,
        restarts=rep.restarts,
        iterations=list(rep.iterations),
        converged=rep.converged,
    )
    return EXIT_OK, result, None


def _report_row(r: BoundReport, tol_ent: float) -> dict:
    return {
        "quantity": r.quantity_name,
        "measured": r.measured,
        "bound": r.bound,
        "epsilon": r.epsilon,
        "n": r.n,
        "d": r.d_b,
        "margin": r.margin,
        "hard": r.hard,
        "violated": bool(r.hard and r.margin < -tol_ent),
        "detail": r.detail,
    }


def _cmd_verify(args) -> tuple[int, dict, None]:
    check = args.check
    if check == "fannes":
        reports = verify_fannes(trials=_default(args.trials, 1000), seed=args.seed)
    elif check == "af":
        reports = verify_af(trials=_default(args.trials, 1000), seed=args.seed)
    else:
        if not args.channel_a or not args.channel_b:
            raise SpecError(
                "bad-argument", f"verify {check} needs --channel-a and --channel-b"
            )
        a = parse_channel_spec(args.channel_a)
        b = parse_channel_spec(args.channel_b)
        if check == "theorem3":
            reports = verify_output_entropy(
                a,
                b,
                n=_default(args.n, 1),
                trials=_default(args.trials, 50),
                seed=args.seed,
            )
        else:
            settings = CorollarySettings(
                n=_default(args.n, 1),
                trials=_default(args.trials, 10),
                seed=args.seed,
                optimized=args.optimized,
            )
            reports = verify_capacity_differences(a, b, settings)
    rows = [_report_row(r, args.tol_ent) for r in reports]
    violations = sum(row["violated"] for row in rows)
    result = {
        "check": check,
        "count": len(rows),
        "violations": violations,
        "min_margin": min(row["margin"] for row in rows),
        "reports": rows,
    }
    return (EXIT_VIOLATION if violations else EXIT_OK), result, None


def _cmd_demo(args) -> tuple[int, dict, list[dict]]:
    if args.n_max < 2:
        raise SpecError("bad-argument", f"--n-max must be at least 2, got {args.n_max}")
    rows = discontinuity_demo(range(2, args.n_max + 1))
    rows = [
        {k: (int(v) if k == "n" else float(v)) for k, v in row.items()}
        for row in rows
    ]
    return EXIT_OK, {"table": "discontinuity", "rows": rows}, rows


def _cmd_assisted(args) -> tuple[int, dict, None]:
    if args.what == "erasure":
        lo, hi = erasure_qb_bounds(args.p)
        return (
            EXIT_OK,
            {"p": args.p, "q2": erasure_q2(args.p), "qb_lower": lo, "qb_upper": hi},
            None,
        )
    result = {
        "simulation_upper_bound": simulation_upper_bound(args.q2n, args.p1, args.logd)
    }
    if (args.p2 is None) != (args.q2m is None):
        raise SpecError("bad-argument", "--p2 and --q2m must be given together")
    if args.p2 is not None:
        result["mutual_gap_bound"] = mutual_gap_bound(
            args.q2n, args.q2m, args.p1, args.p2, args.logd
        )
    return EXIT_OK, result, None


def _default(value, fallback):
    return fallback if value is None else value


# ---------------------------------------------------------------------------
# report assembly and emission

def _assert_finite(obj, path="report"):
    """NaN or infinity anywhere in a report is a bug, trapped before emission."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise NumericError("report", f"non-finite value at {path}")
    elif isinstance(obj, dict):
        for k, v in obj.items():
            _assert_finite(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _assert_finite(v, f"{path}[{i}]")


def _envelope(args, result: dict) -> dict:
    return {
        "schema": 1,
        "tool": "capcont",
        "version": __version__,
        "command": args.command_name,
        "seed": args.seed,
        "tolerances": {"entropy": args.tol_ent, "distance": args.tol_dist},
        "result": result,
    }


def _pretty(obj, out, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                out.write(f"{pad}{k}:\n")
                _pretty(v, out, indent + 1)
            else:
                out.write(f"{pad}{k}: {v}\n")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _pretty(v, out, indent)
                out.write("\n")
            else:
                out.write(f"{pad}- {v}\n")
    else:
        out.write(f"{pad}{obj}\n")


def _emit(args, report: dict, csv_rows) -> None:
    if args.csv:
        if csv_rows is None:
            raise SpecError(
                "bad-argument", "csv output is only available for trend tables"
            )
        writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(csv_rows)
    elif args.json:
        print(json.dumps(report, sort_keys=True, indent=2, allow_nan=False))
    else:
        _pretty(report, sys.stdout)


# ---------------------------------------------------------------------------
# argument surface

def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="run seed, 64-bit")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument(
        "--csv", action="store_true", help="emit CSV (trend tables only)"
    )
    common.add_argument(
        "--tol-ent",
        type=float,
        default=TAU_ENT,
        help="slack for entropy bound violations",
    )
    common.add_argument(
        "--tol-dist",
        type=float,
        default=TAU_SDP,
        help="certified-gap tolerance for distances",
    )

    parser = _Parser(prog="capcont", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--version", action="version", version=f"capcont {__version__}"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("norm", parents=[common], help="channel distance")
    p.add_argument("metric", choices=["diamond"])
    p.add_argument("--a", required=True, help="first channel spec or file")
    p.add_argument("--b", required=True, help="second channel spec or file")
    p.add_argument("--probe-trials", type=int, default=0)
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("entropy", parents=[common], help="entropy of a state file")
    p.add_argument("--state", required=True)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("info", parents=[common], help="information quantity")
    p.add_argument("kind", choices=["coherent", "holevo", "private"])
    p.add_argument("--channel", required=True)
    p.add_argument(
        "--input",
        required=True,
        help="reference (x) input state file (coherent) or ensemble file",
    )
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("capacity", parents=[common], help="maximized capacity proxy")
    p.add_argument("kind", choices=["coherent", "holevo", "private"])
    p.add_argument("--channel", required=True)
    p.add_argument("--n", type=int, default=1, help="copy count")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument(
        "--ensemble-size",
        type=int,
        default=0,
        help="ensemble size for holevo/private; default d_in squared",
    )
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("verify", parents=[common], help="bound verification harness")
    p.add_argument("check", choices=["theorem3", "fannes", "af", "corollaries"])
    p.add_argument("--channel-a")
    p.add_argument("--channel-b")
    p.add_argument("--n", type=int, default=None, help="copy count")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument(
        "--optimized",
        action="store_true",
        help="also compare independently maximized proxies (corollaries)",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="trend tables")
    p.add_argument("what", choices=["discontinuity"])
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("assisted", parents=[common], help="assisted-capacity arithmetic")
    asub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    pb = asub.add_parser("bounds", parents=[common])
    pb.add_argument("--q2n", type=float, required=True, help="two-way capacity of N")
    pb.add_argument("--p1", type=float, required=True, help="mixing weight toward N")
    pb.add_argument("--q2m", type=float, default=None, help="two-way capacity of M")
    pb.add_argument("--p2", type=float, default=None, help="mixing weight toward M")
    pb.add_argument("--logd", type=float, default=1.0, help="capacity ceiling log d")
    pb.set_defaults(func=_cmd_assisted)
    pe = asub.add_parser("erasure", parents=[common])
    pe.add_argument("--p", type=float, required=True, help="erasure probability")
    pe.set_defaults(func=_cmd_assisted)

    return parser


def _command_name(args) -> str:
    parts = [args.subcommand]
    for attr in ("metric", "kind", "check", "what"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    return " ".join(parts)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        args.command_name = _command_name(args)
        code, result, csv_rows = args.func(args)
        report = _envelope(args, result)
        _assert_finite(report)
        _emit(args, report, csv_rows)
        return code
    except SpecError as exc:
        print(f"capcont: error ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_ERROR
    except CapcontError as exc:
        print(f"capcont: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
