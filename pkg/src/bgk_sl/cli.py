"""Command-line interface.

    bgk-sl run        --scenario smooth --scheme RK3 --interp weno35 \
                      --eps 1e-4 --nx 160 --out profile.csv
    bgk-sl converge   --scenario smooth --scheme BDF3 --interp weno23 \
                      --eps 1e-4,1e-6 --nx 40 --levels 4 --out orders.csv
    bgk-sl cfl-sweep  --scenario smooth --scheme RK2 --interp weno23 \
                      --eps 1e-4 --nx 160 --tfinal 0.3 --out sweep.csv
    bgk-sl cost       --scenario smooth --scheme LatBDF3,BDF3 --eps 1e-4 \
                      --nx 40 --levels 3 --out cost.csv

Options may come from a JSON config file (--config file.json with keys named
like the long flags); explicit command-line flags win on conflict.  Output is
CSV (UTF-8, header row, 17 significant digits); without --out it goes to
stdout.  Exit codes: 0 success, 2 configuration error, 3 numerical failure
(with any partial output flushed and marked).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .errors import ConfigError, NumericalError
from .harness import (
    DEFAULT_CFL_SWEEP,
    RunResult,
    cfl_sweep,
    convergence_study,
    cost_study,
    run_case,
)

_CONFIG_KEYS = (
    "scenario",
    "scheme",
    "interp",
    "bc",
    "eps",
    "nx",
    "nv",
    "vmax",
    "cfl",
    "tfinal",
    "levels",
    "out",
    "threads",
    "seed_meta",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgk-sl",
        description="semi-Lagrangian discrete-velocity BGK solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "march one case and write the final moment profiles"),
        ("converge", "successive-refinement error/order table"),
        ("cfl-sweep", "L2 density error over a grid of CFL numbers"),
        ("cost", "wall time vs error for one or more schemes"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with default option values")
        p.add_argument("--scenario", help="bundled scenario name or scenario JSON file")
        p.add_argument(
            "--scheme",
            help="integrator: Euler1|RK2|RK3|BDF2|BDF3|LatEuler|LatBDF2|LatBDF3|LatRK2"
            + (" (comma-separated list)" if name == "cost" else ""),
        )
        p.add_argument("--interp", help="interpolation: linear|weno23|weno35|none")
        p.add_argument("--bc", help="boundary: periodic|reflective|freeflow")
        p.add_argument("--eps", help="relaxation time (Knudsen number)"
                       + (", comma-separated list" if name == "converge" else ""))
        p.add_argument("--nx", help="space intervals" + (
            " (coarsest level)" if name in ("converge", "cost") else ""))
        p.add_argument("--nv", help="velocity nodes per half-axis")
        p.add_argument("--vmax", help="velocity grid extent")
        p.add_argument("--cfl", help="CFL number" + (
            ", comma-separated sweep values" if name == "cfl-sweep" else ""))
        p.add_argument("--tfinal", help="final time")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--threads", help="worker threads for interpolation")
        p.add_argument(
            "--seed-meta",
            action="store_true",
            default=None,
            dest="seed_meta",
            help="prepend config/seed echo as comment lines",
        )
        if name in ("converge", "cost"):
            p.add_argument("--levels", help="number of grid doublings from --nx")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {}
    try:
        opts = _merge_options(args)
        return _dispatch(args.command, opts)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except NumericalError as err:
        partial = getattr(err, "partial_result", None)
        if isinstance(partial, RunResult):
            _write_run_csv(opts.get("out"), partial, opts.get("seed_meta", False), failed=str(err))
        print(f"numerical failure: {err}", file=sys.stderr)
        return 3


# --------------------------------------------------------------------------
# option handling
# --------------------------------------------------------------------------
def _merge_options(args: argparse.Namespace) -> dict:
    """Config-file values fill in flags the user left unset."""
    opts = {key: getattr(args, key, None) for key in _CONFIG_KEYS}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_opts = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigError(f"cannot read config file {args.config!r}: {err}") from err
        if not isinstance(file_opts, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(file_opts) - set(_CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, value in file_opts.items():
            if opts.get(key) is None:
                opts[key] = value
    if opts.get("seed_meta") is None:
        opts["seed_meta"] = False
    return opts


def _require(opts: dict, key: str):
    if opts.get(key) is None:
        raise ConfigError(f"missing required option --{key.replace('_', '-')}")
    return opts[key]


def _as_float(value, key):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"--{key} expects a number, got {value!r}") from None


def _as_int(value, key):
    try:
        return int(str(value))
    except (TypeError, ValueError):
        raise ConfigError(f"--{key} expects an integer, got {value!r}") from None


def _float_list(value, key):
    if isinstance(value, (list, tuple)):
        return [_as_float(v, key) for v in value]
    return [_as_float(tok, key) for tok in str(value).split(",") if tok.strip()]


def _common_kwargs(opts: dict) -> dict:
    kwargs = {}
    if opts.get("nv") is not None:
        kwargs["nv"] = _as_int(opts["nv"], "nv")
    if opts.get("vmax") is not None:
        kwargs["vmax"] = _as_float(opts["vmax"], "vmax")
    if opts.get("threads") is not None:
        kwargs["threads"] = _as_int(opts["threads"], "threads")
    return kwargs


def _nx_ladder(opts: dict, default_nx: int, default_levels: int) -> list[int]:
    base = _as_int(opts["nx"], "nx") if opts.get("nx") is not None else default_nx
    levels = _as_int(opts["levels"], "levels") if opts.get("levels") is not None else default_levels
    if levels < 2:
        raise ConfigError(f"--levels must be >= 2, got {levels}")
    return [base * 2**k for k in range(levels)]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------
def _dispatch(command: str, opts: dict) -> int:
    handler = {
        "run": _cmd_run,
        "converge": _cmd_converge,
        "cfl-sweep": _cmd_cfl_sweep,
        "cost": _cmd_cost,
    }[command]
    return handler(opts)


def _cmd_run(opts: dict) -> int:
    result = run_case(
        _require(opts, "scenario"),
        integrator=_require(opts, "scheme"),
        interp=opts.get("interp"),
        boundary=opts.get("bc"),
        eps=_as_float(_require(opts, "eps"), "eps"),
        nx=_as_int(_require(opts, "nx"), "nx"),
        cfl=_as_float(opts["cfl"], "cfl") if opts.get("cfl") is not None else None,
        t_final=_as_float(opts["tfinal"], "tfinal") if opts.get("tfinal") is not None else None,
        **_common_kwargs(opts),
    )
    _write_run_csv(opts.get("out"), result, opts["seed_meta"])
    return 0


def _cmd_converge(opts: dict) -> int:
    rows = convergence_study(
        _require(opts, "scenario"),
        integrator=_require(opts, "scheme"),
        interp=opts.get("interp"),
        boundary=opts.get("bc"),
        eps_list=_float_list(_require(opts, "eps"), "eps"),
        nx_list=_nx_ladder(opts, default_nx=40, default_levels=4),
        cfl=_as_float(opts["cfl"], "cfl") if opts.get("cfl") is not None else None,
        t_final=_as_float(opts["tfinal"], "tfinal") if opts.get("tfinal") is not None else None,
        **_common_kwargs(opts),
    )
    _write_table(
        opts.get("out"),
        ["eps", "nx", "err_l1_rho", "order"],
        [[r["eps"], r["nx"], r["err_l1_rho"], r["order"]] for r in rows],
        _meta(opts) if opts["seed_meta"] else None,
        header_names=["eps", "nx", "err_L1_rho", "order"],
    )
    return 0


def _cmd_cfl_sweep(opts: dict) -> int:
    cfl_list = (
        _float_list(opts["cfl"], "cfl") if opts.get("cfl") is not None else list(DEFAULT_CFL_SWEEP)
    )
    rows = cfl_sweep(
        _require(opts, "scenario"),
        integrator=_require(opts, "scheme"),
        interp=opts.get("interp"),
        boundary=opts.get("bc"),
        eps=_as_float(_require(opts, "eps"), "eps"),
        cfl_list=cfl_list,
        nx=_as_int(opts["nx"], "nx") if opts.get("nx") is not None else 160,
        t_final=_as_float(opts["tfinal"], "tfinal") if opts.get("tfinal") is not None else None,
        **_common_kwargs(opts),
    )
    _write_table(
        opts.get("out"),
        ["cfl_requested", "cfl_actual", "err_l2_rho"],
        [[r["cfl_requested"], r["cfl_actual"], r["err_l2_rho"]] for r in rows],
        _meta(opts, cfl_grid=cfl_list) if opts["seed_meta"] else None,
        header_names=["cfl_requested", "cfl_actual", "err_L2_rho"],
    )
    return 0


def _cmd_cost(opts: dict) -> int:
    tokens = [tok.strip() for tok in str(_require(opts, "scheme")).split(",") if tok.strip()]
    schemes = [(tok, opts.get("interp")) for tok in tokens]
    rows = cost_study(
        _require(opts, "scenario"),
        schemes=schemes,
        boundary=opts.get("bc"),
        eps=_as_float(_require(opts, "eps"), "eps"),
        nx_list=_nx_ladder(opts, default_nx=40, default_levels=3),
        cfl=_as_float(opts["cfl"], "cfl") if opts.get("cfl") is not None else None,
        t_final=_as_float(opts["tfinal"], "tfinal") if opts.get("tfinal") is not None else None,
        **_common_kwargs(opts),
    )
    _write_table(
        opts.get("out"),
        ["scheme", "nx", "cpu_seconds", "err_l1_rho"],
        [[r["scheme"], r["nx"], r["cpu_seconds"], r["err_l1_rho"]] for r in rows],
        _meta(opts) if opts["seed_meta"] else None,
        header_names=["scheme", "nx", "cpu_seconds", "err_L1_rho"],
    )
    return 0


# --------------------------------------------------------------------------
# CSV output (UTF-8, header row, 17 significant digits)
# --------------------------------------------------------------------------
def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _meta(opts: dict, **extra) -> list[str]:
    items = {key: opts.get(key) for key in _CONFIG_KEYS if opts.get(key) is not None}
    items["rng_seed"] = "none"  # the solver is deterministic; no RNG involved
    items.update(extra)
    lines = []
    for key in sorted(items):
        value = items[key]
        if isinstance(value, (list, tuple)):
            value = ",".join(_fmt(v) for v in value)
        lines.append(f"# {key}={_fmt(value)}")
    return lines


def _open_out(path):
    if path:
        return open(path, "w", encoding="utf-8", newline=""), True
    return sys.stdout, False


def _write_table(path, keys, rows, meta_lines, header_names=None, trailer=None):
    stream, close = _open_out(path)
    try:
        for line in meta_lines or ():
            stream.write(line + "\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header_names or keys)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        if trailer:
            stream.write(trailer + "\n")
    finally:
        if close:
            stream.close()


def _write_run_csv(path, result: RunResult, seed_meta: bool, failed: str | None = None):
    meta_lines = None
    if seed_meta:
        meta_lines = [f"# {key}={_fmt(value)}" for key, value in sorted(result.meta.items())]
        meta_lines.append("# rng_seed=none")
    _write_table(
        path,
        ["x", "rho", "u", "T", "E"],
        list(result.rows()),
        meta_lines,
        trailer=f"# FAILED: {failed}" if failed else None,
    )


if __name__ == "__main__":
    sys.exit(main())
