"""Command line interface.

Every command writes CSV with a ``#``-prefixed metadata header that
records the tool version, the command, its full parameter set, a SHA-256
digest of each input file, and a timestamp, so any output can be traced
back to what produced it.  Numbers are serialized with ``repr`` and
round-trip exactly: feeding a written file back into the next command
reproduces the in-process pipeline bit for bit.

Exit codes: 0 success, 2 invalid input, 3 insufficient data, 4 I/O
failure.  Relative output paths are resolved against the directory in
the ``PEMIX_OUT_DIR`` environment variable when it is set.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Mapping

import numpy as np

from . import __version__
from .entropy import PEConfig, PETrace, PETraceSet, multi_tau_pe
from .errors import InsufficientDataError, InvalidInputError
from .generators import (
    LorenzParams,
    MackeyGlassParams,
    lorenz_series,
    mackey_glass_series,
    sine_series,
)
from .ingest import fill_gaps, load_csv, prefilter, regularize
from .mixing import (
    RNG_ALGORITHM,
    AnsatzConfig,
    BinSweepResult,
    bin_average,
    bin_sweep,
    mixing_ansatz,
)
from .reversal import ReversalSeries, reversal_series, windowed_rbar
from .series import TimeSeries, read_series_csv, write_series_csv

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_INSUFFICIENT_DATA = 3
EXIT_IO = 4

_TRACE_TAG = "pemix-traces v1"
_REVERSAL_TAG = "pemix-reversal v1"
_SWEEP_TAG = "pemix-sweep v1"


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _resolve_out(raw: str) -> Path:
    path = Path(raw)
    base = os.environ.get("PEMIX_OUT_DIR")
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _manifest(command: str, params: Mapping[str, object], inputs: Mapping[str, Path]) -> dict[str, object]:
    meta: dict[str, object] = {
        "version": __version__,
        "command": command,
        "created": _utc_now(),
    }
    for name, path in inputs.items():
        meta[f"{name}_sha256"] = _sha256(path)
    meta.update(params)
    return meta


def _write_metadata(stream: IO[str], tag: str, metadata: Mapping[str, object]) -> None:
    stream.write(f"# {tag}\n")
    for key, value in metadata.items():
        stream.write(f"# {key}: {value}\n")


def _read_metadata(stream: IO[str]) -> tuple[dict[str, str], list[str]]:
    """Split a CSV stream into header metadata and raw data lines."""
    metadata: dict[str, str] = {}
    lines: list[str] = []
    for raw in stream:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, value = body.partition(":")
                metadata[key.strip()] = value.strip()
            continue
        lines.append(line)
    return metadata, lines


def write_trace_csv(stream: IO[str], traces: PETraceSet, metadata: Mapping[str, object]) -> None:
    _write_metadata(stream, _TRACE_TAG, metadata)
    taus = [int(t) for t in traces.taus]
    stream.write("anchor," + ",".join(f"pe_tau{t}" for t in taus) + "\n")
    matrix = traces.matrix()
    anchors = traces.anchors
    for i in range(anchors.shape[0]):
        row = ",".join(repr(float(matrix[k, i])) for k in range(len(taus)))
        stream.write(f"{int(anchors[i])},{row}\n")


def read_trace_csv(stream: IO[str]) -> tuple[PETraceSet, dict[str, str]]:
    metadata, lines = _read_metadata(stream)
    if not lines:
        raise InvalidInputError("trace file has no data")
    columns = lines[0].split(",")
    if len(columns) < 3 or columns[0] != "anchor":
        raise InvalidInputError(
            "trace file must have columns 'anchor,pe_tau<min>,...,pe_tau<max>'"
        )
    try:
        taus = [int(c.removeprefix("pe_tau")) for c in columns[1:]]
    except ValueError:
        raise InvalidInputError(f"unrecognized trace columns {columns[1:]}") from None
    rows = [line.split(",") for line in lines[1:]]
    if not rows:
        raise InvalidInputError("trace file has a header but no rows")
    try:
        anchors = np.asarray([int(r[0]) for r in rows], dtype=np.int64)
        matrix = np.asarray(
            [[float(cell) for cell in r[1:]] for r in rows], dtype=np.float64
        )
    except (ValueError, IndexError) as exc:
        raise InvalidInputError(f"bad trace row: {exc}") from None
    if matrix.shape[1] != len(taus):
        raise InvalidInputError("trace rows do not match the declared stride columns")
    traces = tuple(
        PETrace(tau=taus[k], anchors=anchors, values=np.ascontiguousarray(matrix[:, k]))
        for k in range(len(taus))
    )
    return PETraceSet(traces=traces), metadata


def write_reversal_csv(stream: IO[str], rev: ReversalSeries, metadata: Mapping[str, object]) -> None:
    _write_metadata(stream, _REVERSAL_TAG, metadata)
    stream.write("anchor,reversal\n")
    for i in range(len(rev)):
        stream.write(f"{int(rev.anchors[i])},{float(rev.r_values[i])!r}\n")


def write_sweep_csv(stream: IO[str], result: BinSweepResult, metadata: Mapping[str, object]) -> None:
    _write_metadata(stream, _SWEEP_TAG, metadata)
    stream.write("bin_size,mean_reversal,data_sufficient\n")
    for i in range(result.bin_sizes.shape[0]):
        r = float(result.r_bars[i])
        cell = repr(r) if np.isfinite(r) else "nan"
        flag = "true" if bool(result.sufficient[i]) else "false"
        stream.write(f"{int(result.bin_sizes[i])},{cell},{flag}\n")


def _load_series(path: Path) -> tuple[TimeSeries, dict[str, str]]:
    with open(path, "r", encoding="utf-8") as stream:
        return read_series_csv(stream)


def _pe_config_from_args(args: argparse.Namespace) -> PEConfig:
    return PEConfig(
        ell=args.ell,
        window=args.window,
        tau_min=args.tau_min,
        tau_max=args.tau_max,
        hop=args.hop,
    )


def _add_pe_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ell", type=int, default=4, help="points per pattern (default 4)")
    parser.add_argument("--window", type=int, default=5000, help="observations per window (default 5000)")
    parser.add_argument("--tau-min", type=int, default=1, help="smallest stride (default 1)")
    parser.add_argument("--tau-max", type=int, default=6, help="largest stride (default 6)")
    parser.add_argument("--hop", type=int, default=1, help="window step (default 1)")


def _pe_params(config: PEConfig) -> dict[str, object]:
    return {
        "ell": config.ell,
        "window": config.window,
        "tau_min": config.tau_min,
        "tau_max": config.tau_max,
        "hop": config.hop,
    }


# ---------------------------------------------------------------- commands


def cmd_generate(args: argparse.Namespace) -> int:
    if args.system == "lorenz":
        params = LorenzParams(
            a=args.a, b=args.b, r=args.r,
            initial=(args.x0, args.y0, args.z0),
            h=args.h, steps=args.steps, skip=args.skip,
        )
        series = lorenz_series(params)
        detail: dict[str, object] = {
            "a": params.a, "b": params.b, "r": params.r,
            "x0": params.initial[0], "y0": params.initial[1], "z0": params.initial[2],
            "h": params.h, "steps": params.steps, "skip": params.skip,
        }
    elif args.system == "mackey-glass":
        params = MackeyGlassParams(
            beta=args.beta, gamma=args.gamma, q=args.q, t0=args.t0,
            x0=args.x0, h=args.h, steps=args.steps, skip=args.skip,
        )
        series = mackey_glass_series(params)
        detail = {
            "beta": params.beta, "gamma": params.gamma, "q": params.q,
            "t0": params.t0, "x0": params.x0, "h": params.h,
            "steps": params.steps, "skip": params.skip,
        }
    else:
        series = sine_series(args.amplitude, args.period, args.n)
        detail = {"amplitude": args.amplitude, "period": args.period, "n": args.n}
    detail["system"] = args.system
    detail["seed"] = "none"
    out = _resolve_out(args.out)
    meta = _manifest(f"generate {args.system}", detail, {})
    with open(out, "w", encoding="utf-8") as stream:
        write_series_csv(stream, series, meta)
    print(f"wrote {len(series)} samples to {out}")
    return EXIT_OK


def cmd_ansatz(args: argparse.Namespace) -> int:
    inp = Path(args.input)
    series, _ = _load_series(inp)
    config = AnsatzConfig(k=args.k, seed=args.seed)
    mixed = mixing_ansatz(series, config)
    out = _resolve_out(args.out)
    meta = _manifest(
        "ansatz",
        {"k": config.k, "seed": config.seed, "rng": RNG_ALGORITHM},
        {"input": inp},
    )
    with open(out, "w", encoding="utf-8") as stream:
        write_series_csv(stream, mixed, meta)
    print(f"wrote mixed series ({len(mixed)} samples, k={config.k}) to {out}")
    return EXIT_OK


def cmd_pe(args: argparse.Namespace) -> int:
    inp = Path(args.input)
    series, _ = _load_series(inp)
    config = _pe_config_from_args(args)
    traces = multi_tau_pe(series, config)
    out = _resolve_out(args.out)
    params = _pe_params(config)
    params["spacing"] = repr(series.spacing)
    params["unit"] = series.unit
    params["origin"] = repr(series.origin)
    params["seed"] = "none"
    meta = _manifest("pe", params, {"input": inp})
    with open(out, "w", encoding="utf-8") as stream:
        write_trace_csv(stream, traces, meta)
    print(f"wrote {len(traces.anchors)} anchors x {len(traces.taus)} strides to {out}")
    return EXIT_OK


def cmd_reversal(args: argparse.Namespace) -> int:
    inp = Path(args.input)
    with open(inp, "r", encoding="utf-8") as stream:
        traces, _ = read_trace_csv(stream)
    rev = reversal_series(traces)
    params: dict[str, object] = {"r_bar": repr(rev.r_bar)}
    output = rev
    if args.window is not None:
        output = windowed_rbar(rev, window=args.window, hop=args.hop)
        params["rbar_window"] = args.window
        params["rbar_hop"] = args.hop
        params["windowed_r_bar"] = repr(output.r_bar)
    meta = _manifest("reversal", params, {"input": inp})
    out = _resolve_out(args.out)
    with open(out, "w", encoding="utf-8") as stream:
        write_reversal_csv(stream, output, meta)
    print(f"mean reversal score: {rev.r_bar!r}")
    print(f"wrote {len(output)} rows to {out}")
    return EXIT_OK


def cmd_bin(args: argparse.Namespace) -> int:
    inp = Path(args.input)
    series, _ = _load_series(inp)
    binned = bin_average(series, args.j)
    out = _resolve_out(args.out)
    meta = _manifest("bin", {"j": args.j}, {"input": inp})
    with open(out, "w", encoding="utf-8") as stream:
        write_series_csv(stream, binned, meta)
    print(f"wrote {len(binned)} bins of {args.j} to {out}")
    return EXIT_OK


def cmd_binsweep(args: argparse.Namespace) -> int:
    inp = Path(args.input)
    series, _ = _load_series(inp)
    if args.j_max < args.j_min:
        raise InvalidInputError(f"--j-max must be >= --j-min, got {args.j_max} < {args.j_min}")
    config = _pe_config_from_args(args)
    result = bin_sweep(series, range(args.j_min, args.j_max + 1), config)
    params = _pe_params(config)
    params.update(
        {
            "j_min": args.j_min,
            "j_max": args.j_max,
            "recommended_bin": result.recommended_j,
            "achieved_zero": "true" if result.achieved_zero else "false",
        }
    )
    meta = _manifest("binsweep", params, {"input": inp})
    out = _resolve_out(args.out)
    with open(out, "w", encoding="utf-8") as stream:
        write_sweep_csv(stream, result, meta)
    print(
        f"recommended bin size: {result.recommended_j} "
        f"(reversal reaches zero: {'yes' if result.achieved_zero else 'no'})"
    )
    print(f"wrote sweep of {result.bin_sizes.shape[0]} sizes to {out}")
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    inp = Path(args.input)

    def column(selector: str) -> int | str:
        try:
            return int(selector)
        except ValueError:
            return selector

    records = load_csv(
        inp,
        time_column=column(args.time_column),
        value_column=column(args.value_column),
        header_policy=args.header,
    )
    series = regularize(records, args.target_spacing, unit=args.unit)
    report_dict: dict[str, object] = {"n_records": len(records)}
    if args.fill == "ffill":
        series, report = fill_gaps(series)
        report_dict.update(report.as_dict())
    series = prefilter(series, method=args.prefilter, width=args.median_width)
    out = _resolve_out(args.out)
    params: dict[str, object] = {
        "time_column": args.time_column,
        "value_column": args.value_column,
        "header_policy": args.header,
        "target_spacing": args.target_spacing,
        "fill": args.fill,
        "prefilter": args.prefilter,
    }
    if args.prefilter == "moving_median":
        params["median_width"] = args.median_width
    if "n_missing_filled" in report_dict:
        params["n_missing_filled"] = report_dict["n_missing_filled"]
        params["n_suspect_removed"] = report_dict["n_suspect_removed"]
    meta = _manifest("ingest", params, {"input": inp})
    with open(out, "w", encoding="utf-8") as stream:
        write_series_csv(stream, series, meta)
    report_path = out.with_suffix(out.suffix + ".report.json")
    report_dict["input"] = str(inp)
    report_dict["output"] = str(out)
    report_dict["created"] = _utc_now()
    with open(report_path, "w", encoding="utf-8") as stream:
        json.dump(report_dict, stream, indent=2)
        stream.write("\n")
    print(f"wrote {len(series)} grid points to {out}")
    print(f"wrote cleaning report to {report_path}")
    return EXIT_OK


# ------------------------------------------------------------- reproduce


_DEMO_SEED = 1721


def _check(name: str, value: float, target: str, ok: bool) -> dict[str, object]:
    return {"name": name, "value": value, "target": target, "pass": bool(ok)}


def _reproduce_lorenz(outdir: Path, scale: str, seed: int) -> list[dict[str, object]]:
    steps = 500_000 if scale == "full" else 100_000
    config = PEConfig()
    series = lorenz_series(LorenzParams(steps=steps))
    mixed = mixing_ansatz(series, AnsatzConfig(k=3, seed=seed))
    sweep = bin_sweep(mixed, range(1, 11), config)
    binned = bin_average(mixed, sweep.recommended_j)
    checks = []
    rows = {}
    outputs = (
        ("raw", series),
        ("mixed_k3", mixed),
        (f"binned_j{sweep.recommended_j}", binned),
    )
    for label, data in outputs:
        with open(outdir / f"lorenz_{label}.csv", "w", encoding="utf-8") as stream:
            write_series_csv(stream, data, {"command": f"reproduce lorenz/{label}"})
        traces = multi_tau_pe(data, config)
        with open(outdir / f"lorenz_{label}_pe.csv", "w", encoding="utf-8") as stream:
            write_trace_csv(stream, traces, _pe_params(config))
        rev = reversal_series(traces)
        with open(outdir / f"lorenz_{label}_reversal.csv", "w", encoding="utf-8") as stream:
            write_reversal_csv(stream, rev, {"r_bar": repr(rev.r_bar)})
        rows[label] = rev.r_bar
    with open(outdir / "lorenz_sweep.csv", "w", encoding="utf-8") as stream:
        write_sweep_csv(
            stream,
            sweep,
            {
                "recommended_bin": sweep.recommended_j,
                "achieved_zero": "true" if sweep.achieved_zero else "false",
            },
        )
    raw_tol = 0.0 if scale == "full" else 0.02
    checks.append(
        _check("lorenz_raw_rbar", rows["raw"], f"<= {raw_tol}", rows["raw"] <= raw_tol)
    )
    checks.append(
        _check("lorenz_mixed_rbar", rows["mixed_k3"], ">= 0.98", rows["mixed_k3"] >= 0.98)
    )
    checks.append(
        _check(
            "lorenz_recommended_bin",
            sweep.recommended_j,
            "within [2, 4]",
            2 <= sweep.recommended_j <= 4,
        )
    )
    binned_rbar = rows[f"binned_j{sweep.recommended_j}"]
    bin_tol = 0.0 if scale == "full" else 0.02
    checks.append(
        _check(
            "lorenz_binned_rbar", binned_rbar, f"<= {bin_tol}", binned_rbar <= bin_tol
        )
    )
    return checks


def _reproduce_mackey_glass(outdir: Path, scale: str, seed: int) -> list[dict[str, object]]:
    steps = 1_500_000 if scale == "full" else 300_000
    config = PEConfig()
    series = mackey_glass_series(MackeyGlassParams(steps=steps))
    mixed = mixing_ansatz(series, AnsatzConfig(k=4, seed=seed))
    sweep = bin_sweep(series=mixed, j_range=range(1, 13), pe_config=config)
    binned = bin_average(mixed, sweep.recommended_j)
    checks = []
    rows = {}
    outputs = (
        ("raw", series),
        ("mixed_k4", mixed),
        (f"binned_j{sweep.recommended_j}", binned),
    )
    for label, data in outputs:
        with open(outdir / f"mackey_glass_{label}.csv", "w", encoding="utf-8") as stream:
            write_series_csv(stream, data, {"command": f"reproduce mackey-glass/{label}"})
        traces = multi_tau_pe(data, config)
        with open(outdir / f"mackey_glass_{label}_pe.csv", "w", encoding="utf-8") as stream:
            write_trace_csv(stream, traces, _pe_params(config))
        rev = reversal_series(traces)
        with open(
            outdir / f"mackey_glass_{label}_reversal.csv", "w", encoding="utf-8"
        ) as stream:
            write_reversal_csv(stream, rev, {"r_bar": repr(rev.r_bar)})
        rows[label] = rev.r_bar
    with open(outdir / "mackey_glass_sweep.csv", "w", encoding="utf-8") as stream:
        write_sweep_csv(
            stream,
            sweep,
            {
                "recommended_bin": sweep.recommended_j,
                "achieved_zero": "true" if sweep.achieved_zero else "false",
            },
        )
    checks.append(
        _check("mg_raw_rbar", rows["raw"], "<= 0.02", rows["raw"] <= 0.02)
    )
    mixed_rbar = rows["mixed_k4"]
    checks.append(_check("mg_mixed_rbar", mixed_rbar, ">= 0.98", mixed_rbar >= 0.98))
    binned_rbar = rows[f"binned_j{sweep.recommended_j}"]
    checks.append(
        _check("mg_binned_rbar", binned_rbar, "<= 0.02", binned_rbar <= 0.02)
    )
    return checks


def _reproduce_sweeps(outdir: Path, scale: str, seed: int) -> list[dict[str, object]]:
    config = PEConfig()
    lorenz_steps = 500_000 if scale == "full" else 100_000
    mg_steps = 1_500_000 if scale == "full" else 300_000
    checks = []
    lorenz = lorenz_series(LorenzParams(steps=lorenz_steps))
    lorenz_mixed = mixing_ansatz(lorenz, AnsatzConfig(k=3, seed=seed))
    sweep_l = bin_sweep(lorenz_mixed, range(1, 11), config)
    with open(outdir / "lorenz_k3_sweep.csv", "w", encoding="utf-8") as stream:
        write_sweep_csv(
            stream,
            sweep_l,
            {
                "recommended_bin": sweep_l.recommended_j,
                "achieved_zero": "true" if sweep_l.achieved_zero else "false",
            },
        )
    checks.append(
        _check(
            "lorenz_k3_recommended_bin",
            sweep_l.recommended_j,
            "within [2, 4]",
            2 <= sweep_l.recommended_j <= 4,
        )
    )
    mg = mackey_glass_series(MackeyGlassParams(steps=mg_steps))
    mg_mixed = mixing_ansatz(mg, AnsatzConfig(k=4, seed=seed + 1))
    sweep_m = bin_sweep(mg_mixed, range(1, 13), config)
    with open(outdir / "mackey_glass_k4_sweep.csv", "w", encoding="utf-8") as stream:
        write_sweep_csv(
            stream,
            sweep_m,
            {
                "recommended_bin": sweep_m.recommended_j,
                "achieved_zero": "true" if sweep_m.achieved_zero else "false",
            },
        )
    checks.append(
        _check(
            "mg_k4_recommended_bin",
            sweep_m.recommended_j,
            "within [1, 8]",
            1 <= sweep_m.recommended_j <= 8,
        )
    )
    return checks


def cmd_reproduce(args: argparse.Namespace) -> int:
    outdir = _resolve_out(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    runner = {
        "lorenz": _reproduce_lorenz,
        "mackey-glass": _reproduce_mackey_glass,
        "sweeps": _reproduce_sweeps,
    }[args.target]
    checks = runner(outdir, args.scale, args.seed)
    summary = {
        "target": args.target,
        "scale": args.scale,
        "seed": args.seed,
        "version": __version__,
        "created": _utc_now(),
        "runtime_seconds": round(time.perf_counter() - started, 3),
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks),
    }
    with open(outdir / "summary.json", "w", encoding="utf-8") as stream:
        json.dump(summary, stream, indent=2)
        stream.write("\n")
    for check in checks:
        state = "PASS" if check["pass"] else "FAIL"
        print(f"{state} {check['name']}: {check['value']} (target {check['target']})")
    print(f"summary written to {outdir / 'summary.json'}")
    return EXIT_OK if summary["all_pass"] else EXIT_INSUFFICIENT_DATA


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pemix",
        description=(
            "Detect local mixing in evenly sampled time series by comparing "
            "windowed permutation entropy across sampling strides."
        ),
        epilog=(
            "Relative output paths are resolved against $PEMIX_OUT_DIR when set. "
            "Exit codes: 0 ok, 2 invalid input, 3 insufficient data, 4 I/O error."
        ),
    )
    parser.add_argument("--version", action="version", version=f"pemix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="synthesize a reference series")
    gen_sub = gen.add_subparsers(dest="system", required=True)

    lor = gen_sub.add_parser("lorenz", help="chaotic convection flow (first coordinate)")
    lor.add_argument("--a", type=float, default=16.0)
    lor.add_argument("--b", type=float, default=4.0)
    lor.add_argument("--r", type=float, default=45.0)
    lor.add_argument("--x0", type=float, default=-13.0)
    lor.add_argument("--y0", type=float, default=-12.0)
    lor.add_argument("--z0", type=float, default=52.0)
    lor.add_argument("--h", type=float, default=0.005)
    lor.add_argument("--steps", type=int, default=500_000)
    lor.add_argument("--skip", type=int, default=0)
    lor.add_argument("-o", "--out", required=True)
    lor.set_defaults(func=cmd_generate)

    mg = gen_sub.add_parser("mackey-glass", help="delayed feedback system")
    mg.add_argument("--beta", type=float, default=0.2)
    mg.add_argument("--gamma", type=float, default=0.1)
    mg.add_argument("--q", type=float, default=10.0)
    mg.add_argument("--t0", type=float, default=17.0)
    mg.add_argument("--x0", type=float, default=1.2)
    mg.add_argument("--h", type=float, default=0.1)
    mg.add_argument("--steps", type=int, default=1_500_000)
    mg.add_argument("--skip", type=int, default=0)
    mg.add_argument("-o", "--out", required=True)
    mg.set_defaults(func=cmd_generate)

    sine = gen_sub.add_parser("sine", help="pure tone")
    sine.add_argument("--amplitude", type=float, default=1.0)
    sine.add_argument("--period", type=int, default=200, help="samples per cycle")
    sine.add_argument("--n", type=int, default=10_000)
    sine.add_argument("-o", "--out", required=True)
    sine.set_defaults(func=cmd_generate)

    ans = sub.add_parser("ansatz", help="apply the synthetic mixing surrogate")
    ans.add_argument("-i", "--input", required=True)
    ans.add_argument("-k", type=int, required=True, help="neighborhood half-width")
    ans.add_argument("--seed", type=int, default=0)
    ans.add_argument("-o", "--out", required=True)
    ans.set_defaults(func=cmd_ansatz)

    pe = sub.add_parser("pe", help="windowed permutation entropy per stride")
    pe.add_argument("-i", "--input", required=True)
    _add_pe_arguments(pe)
    pe.add_argument("-o", "--out", required=True)
    pe.set_defaults(func=cmd_pe)

    rev = sub.add_parser("reversal", help="stride-ordering reversal scores")
    rev.add_argument("-i", "--input", required=True, help="trace CSV from 'pemix pe'")
    rev.add_argument("--window", type=int, default=None, help="emit a sliding mean instead of raw scores")
    rev.add_argument("--hop", type=int, default=1)
    rev.add_argument("-o", "--out", required=True)
    rev.set_defaults(func=cmd_reversal)

    binc = sub.add_parser("bin", help="bin-average a series")
    binc.add_argument("-i", "--input", required=True)
    binc.add_argument("-j", type=int, required=True, help="bin size")
    binc.add_argument("-o", "--out", required=True)
    binc.set_defaults(func=cmd_bin)

    sweep = sub.add_parser("binsweep", help="scan bin sizes for the mixing scale")
    sweep.add_argument("-i", "--input", required=True)
    sweep.add_argument("--j-min", type=int, default=1)
    sweep.add_argument("--j-max", type=int, default=10)
    _add_pe_arguments(sweep)
    sweep.add_argument("-o", "--out", required=True)
    sweep.set_defaults(func=cmd_binsweep)

    ing = sub.add_parser("ingest", help="load and clean an irregular export")
    ing.add_argument("-i", "--input", required=True)
    ing.add_argument("--time-column", default="0", help="index or header name (default 0)")
    ing.add_argument("--value-column", default="1", help="index or header name (default 1)")
    ing.add_argument("--header", choices=("auto", "skip", "none"), default="auto")
    ing.add_argument("--target-spacing", type=float, required=True)
    ing.add_argument("--unit", default="seconds")
    ing.add_argument("--fill", choices=("ffill", "none"), default="ffill")
    ing.add_argument("--prefilter", choices=("none", "moving_median"), default="none")
    ing.add_argument("--median-width", type=int, default=None)
    ing.add_argument("-o", "--out", required=True)
    ing.set_defaults(func=cmd_ingest)

    rep = sub.add_parser("reproduce", help="rerun the built-in validation studies")
    rep.add_argument("target", choices=("lorenz", "mackey-glass", "sweeps"))
    rep.add_argument("--outdir", required=True)
    rep.add_argument("--scale", choices=("full", "desk"), default="desk",
                     help="'full' = complete runs, 'desk' = shorter runs (default)")
    rep.add_argument("--seed", type=int, default=_DEMO_SEED)
    rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT_DATA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
