"""Command-line front end.

Subcommands: sweep, spectrum-1d, radial, rearrange, counterexample,
hl-check.  Each accepts a JSON config file (--config) whose keys can be
overridden by inline flags, and writes CSV/JSON to --out (or --summary,
--csv where applicable) or stdout.

Exit codes: 0 success, 1 a verified property failed at tolerance,
2 malformed input (the message names the offending key).
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Optional

from . import radialnd, rearrange, scenarios, sl1d, sweep
from .weights import (
    RadialWeight,
    Weight1D,
    anti_gaussian_weight,
    constant_weight,
    gaussian_weight,
    radial_square_weight,
    radial_zero_weight,
)


class ConfigError(Exception):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


class VerificationFailure(Exception):
    pass


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return cfg


def _require(cfg: dict, key: str, caster, default=None):
    if key not in cfg or cfg[key] is None:
        if default is not None:
            return default
        raise ConfigError(key, "missing required key")
    try:
        return caster(cfg[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"bad value {cfg[key]!r}") from exc


def _weight_block(cfg: dict) -> dict:
    block = cfg.get("weight")
    if block is None:
        raise ConfigError("weight", "missing required key")
    if isinstance(block, str):
        block = {"kind": block}
    if not isinstance(block, dict) or "kind" not in block:
        raise ConfigError("weight.kind", "weight must be {kind, params?}")
    return block


def _weight1d(cfg: dict) -> Weight1D:
    block = _weight_block(cfg)
    kind = block["kind"]
    params = block.get("params", {}) or {}
    if kind == "gaussian":
        return gaussian_weight()
    if kind == "anti_gaussian":
        return anti_gaussian_weight()
    if kind == "constant":
        try:
            return constant_weight(float(params.get("c0", 1.0)))
        except ValueError as exc:
            raise ConfigError("weight.params.c0", str(exc)) from exc
    raise ConfigError("weight.kind", f"unknown 1d weight kind {kind!r}")


def _radial_weight(cfg: dict) -> RadialWeight:
    block = _weight_block(cfg)
    kind = block["kind"]
    params = block.get("params", {}) or {}
    try:
        dim = int(params.get("dim", 2))
    except (TypeError, ValueError) as exc:
        raise ConfigError("weight.params.dim", "dim must be an integer") from exc
    try:
        if kind == "radial_square":
            return radial_square_weight(dim)
        if kind == "radial_zero":
            return radial_zero_weight(dim)
    except ValueError as exc:
        raise ConfigError("weight.params.dim", str(exc)) from exc
    raise ConfigError("weight.kind", f"unknown radial weight kind {kind!r}")


def _cells(cfg: dict, key: str, dim: int) -> rearrange.CellFunction:
    data = cfg.get(key)
    if not isinstance(data, list) or not data:
        raise ConfigError(key, "expected a nonempty JSON array of cells")
    for i, cell in enumerate(data):
        if not isinstance(cell, dict) or "r_in" not in cell or "r_out" not in cell:
            raise ConfigError(f"{key}[{i}]", "cell needs r_in and r_out")
    try:
        return rearrange.cell_function_from_json(data, dim)
    except ValueError as exc:
        raise ConfigError(key, str(exc)) from exc


@contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _dump_json(obj: dict, path: Optional[str]) -> None:
    with _sink(path) as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# subcommand runners

def _run_sweep(cfg: dict) -> int:
    w = _weight1d(cfg)
    try:
        config = sweep.SweepConfig(
            weight=w,
            d=_require(cfg, "budget", float),
            a_min=_require(cfg, "a_min", float),
            a_max=_require(cfg, "a_max", float),
            steps=_require(cfg, "steps", int, default=21),
            n=_require(cfg, "resolution", int, default=4000),
        )
    except ValueError as exc:
        raise ConfigError("budget", str(exc)) from exc
    result = sweep.sweep_mu1(config)
    report = sweep.verify_sweep_laws(config)
    with _sink(cfg.get("out")) as fh:
        sweep.write_sweep_csv(result, fh)
    _dump_json(sweep.sweep_summary(result, report), cfg.get("summary"))
    required = report.symmetry_ok and report.sign_ok
    if report.monotone_class != sweep.CONSTANT:
        required = required and report.strict_ok
    if not required:
        raise VerificationFailure("sweep laws violated at tolerance")
    return 0


def _run_spectrum(cfg: dict) -> int:
    w = _weight1d(cfg)
    interval = cfg.get("interval")
    if not isinstance(interval, dict) or "a" not in interval or "b" not in interval:
        raise ConfigError("interval", "expected {a, b}")
    a = _require(interval, "a", float)
    b = _require(interval, "b", float)
    k = _require(cfg, "count", int, default=3)
    n = _require(cfg, "resolution", int, default=4000)
    bc = cfg.get("bc", "neumann")
    try:
        if bc == "neumann":
            spec = sl1d.solve_neumann(w, a, b, k, n)
        elif bc == "dirichlet":
            spec = sl1d.solve_dirichlet_inverse_weight(w, a, b, k, n)
        elif bc == "flat":
            spec = sl1d.solve_flat_dirichlet(w, a, b, k, n)
        else:
            raise ConfigError("bc", f"unknown boundary condition {bc!r}")
    except ValueError as exc:
        raise ConfigError("interval", str(exc)) from exc
    with _sink(cfg.get("out")) as fh:
        sl1d.write_spectrum_csv(spec, fh)
    vals = spec.eigenvalues
    if bc == "neumann" and abs(vals[0]) > 1e-8 * max(1.0, abs(vals[-1])):
        raise VerificationFailure("Neumann ground eigenvalue not zero at tolerance")
    if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
        raise VerificationFailure("eigenvalues not ascending")
    return 0


def _run_radial(cfg: dict) -> int:
    rw = _radial_weight(cfg)
    radius = _require(cfg, "radius", float)
    n = _require(cfg, "resolution", int, default=2000)
    try:
        report = radialnd.spectral_gap(rw, radius, n)
    except ValueError as exc:
        raise ConfigError("weight", str(exc)) from exc
    if cfg.get("csv"):
        spec = radialnd.solve_radial(radialnd.RadialProblem(rw, radius, 1, n), 1)
        with open(cfg["csv"], "w", encoding="utf-8", newline="") as fh:
            radialnd.write_radial_csv(spec, fh)
    _dump_json(
        {"nu1": report.nu1, "tau1": report.tau1, "gap_ok": report.gap_ok},
        cfg.get("out"),
    )
    if not report.gap_ok:
        raise VerificationFailure("spectral gap nu1 < tau1 violated")
    return 0


def _run_rearrange(cfg: dict) -> int:
    rw = _radial_weight(cfg)
    u = _cells(cfg, "cells", rw.dim)
    n = _require(cfg, "resolution", int, default=4000)
    mass = rearrange.set_measure(u.support, rw)
    star = rearrange.star_rearrangement(u, rw)
    d_orig = rearrange.distribution(u, rw)
    d_star = rearrange.distribution(star, rw)
    equimeasurable = d_orig.edges == d_star.edges and all(
        abs(x - y) <= 1e-10 * max(1.0, abs(x))
        for x, y in zip(d_orig.levels, d_star.levels)
    )
    bound = rearrange.rayleigh_bound(u.support, rw, n=n)
    _dump_json(
        {
            "mass": mass,
            "star_radius": star.support.outer_radius,
            "equimeasurable": equimeasurable,
            "bound": bound.bound,
            "mu1_star": bound.mu1_star,
            "numerator_cmp": bound.numerator_cmp,
            "denominator_cmp": bound.denominator_cmp,
        },
        cfg.get("out"),
    )
    if not (equimeasurable and bound.numerator_cmp and bound.denominator_cmp):
        raise VerificationFailure("rearrangement comparison violated")
    return 0


def _run_hl_check(cfg: dict) -> int:
    rw = _radial_weight(cfg)
    u = _cells(cfg, "u", rw.dim)
    v = _cells(cfg, "v", rw.dim)
    try:
        report = rearrange.hardy_littlewood_check(u, v, rw)
    except ValueError as exc:
        raise ConfigError("v", str(exc)) from exc
    _dump_json(
        {"lhs": report.lhs, "mid": report.mid, "rhs": report.rhs, "ok": report.ok},
        cfg.get("out"),
    )
    if not report.ok:
        raise VerificationFailure("Hardy-Littlewood chain violated")
    return 0


def _run_counterexample(cfg: dict) -> int:
    n = _require(cfg, "resolution", int, default=4096)
    try:
        report = scenarios.run_counterexample(n)
    except ValueError as exc:
        raise ConfigError("resolution", str(exc)) from exc
    _dump_json(report.as_dict(), cfg.get("out"))
    if not report.verdict:
        raise VerificationFailure("counterexample chain failed")
    return 0


_RUNNERS = {
    "sweep": _run_sweep,
    "spectrum-1d": _run_spectrum,
    "radial": _run_radial,
    "rearrange": _run_rearrange,
    "counterexample": _run_counterexample,
    "hl-check": _run_hl_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szegolab",
        description="Weighted Neumann eigenvalue laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--resolution", "--n", dest="resolution", type=int)
        p.add_argument("--weight", help="weight kind override")
        p.add_argument("--dim", type=int, help="radial weight dimension")

    p = sub.add_parser("sweep", help="slide an interval at fixed weighted length")
    common(p)
    p.add_argument("--budget", type=float, help="weighted length d")
    p.add_argument("--a-min", dest="a_min", type=float)
    p.add_argument("--a-max", dest="a_max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--summary", help="JSON summary path (default stdout)")

    p = sub.add_parser("spectrum-1d", help="solve one interval eigenproblem")
    common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--bc", choices=["neumann", "dirichlet", "flat"])
    p.add_argument("--count", type=int)

    p = sub.add_parser("radial", help="radial ball spectra and the nu1 < tau1 gap")
    common(p)
    p.add_argument("--radius", type=float)
    p.add_argument("--csv", help="also dump the k=1 eigenfunction as CSV")

    p = sub.add_parser("rearrange", help="rearrange a cell function and bound mu1")
    common(p)

    p = sub.add_parser("counterexample", help="rectangle-vs-disk comparison")
    common(p)

    p = sub.add_parser("hl-check", help="Hardy-Littlewood chain on two cell functions")
    common(p)
    return parser


def _merge_flags(cfg: dict, args: argparse.Namespace) -> dict:
    out = dict(cfg)
    simple = ("out", "resolution", "budget", "a_min", "a_max", "steps",
              "summary", "bc", "count", "radius", "csv")
    for key in simple:
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    if getattr(args, "weight", None) is not None:
        block = out.get("weight")
        block = dict(block) if isinstance(block, dict) else {}
        block["kind"] = args.weight
        out["weight"] = block
    if getattr(args, "dim", None) is not None:
        block = out.get("weight")
        block = dict(block) if isinstance(block, dict) else {}
        params = dict(block.get("params", {}) or {})
        params["dim"] = args.dim
        block["params"] = params
        out["weight"] = block
    if getattr(args, "a", None) is not None or getattr(args, "b", None) is not None:
        interval = dict(out.get("interval", {}) or {})
        if getattr(args, "a", None) is not None:
            interval["a"] = args.a
        if getattr(args, "b", None) is not None:
            interval["b"] = args.b
        out["interval"] = interval
    return out


def cli_main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_flags(_load_config(args.config), args)
        scenario = cfg.get("scenario")
        if scenario is not None and scenario != args.command:
            raise ConfigError("scenario", f"config names {scenario!r}, not {args.command!r}")
        return _RUNNERS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


def cli_main_entry() -> int:
    return cli_main()
