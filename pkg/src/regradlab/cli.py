"""Command-line front end.

Every capability is exposed as a subcommand with deterministic,
machine-readable output: JSON with full float round-trip precision, CSV
with 12 significant digits.  Exit codes are part of the interface:

    0   success
    1   usage or I/O error
    2   closure failure (an induced operation left the image)
    3   admissibility / validation failure

Defaults can be overridden by a flat key=value config file pointed to by
the REGRAD_CONFIG environment variable; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import bell, genarith, quantum, regraduation
from .errors import AdmissibilityError, RegradlabError
from .genarith import ResultKind

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CLOSURE = 2
EXIT_ADMISSIBILITY = 3

_CONFIG_ENV_VAR = "REGRAD_CONFIG"
_CSV_DIGITS = 12


@dataclass
class RunConfig:
    """Shared run parameters, after precedence resolution."""

    grid_size: int = 10001
    tol: float = 1e-12
    seed: int = 42
    output_format: str = "json"
    output_path: Optional[str] = None

    def validate(self) -> None:
        if self.grid_size < 3:
            raise ValueError(f"grid_size must be >= 3, got {self.grid_size}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"output_format must be json or csv, got {self.output_format!r}")


_CONFIG_COERCERS = {
    "grid_size": int,
    "tol": float,
    "seed": int,
    "output_format": str,
    "output_path": str,
}


def _parse_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_COERCERS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _CONFIG_COERCERS[key](value.strip())
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """defaults < config file (REGRAD_CONFIG) < explicit flags."""
    cfg = RunConfig()
    path = os.environ.get(_CONFIG_ENV_VAR)
    if path:
        for key, value in _parse_config_file(path).items():
            setattr(cfg, key, value)
    for key in _CONFIG_COERCERS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


def _float_cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.{_CSV_DIGITS}g}"
    if isinstance(x, (list, tuple)):
        return json.dumps(x)
    return str(x)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(cfg: RunConfig, payload: dict) -> None:
    """A flat mapping, as pretty JSON or as key,value CSV rows."""
    if cfg.output_format == "csv":
        lines = ["key,value"]
        lines += [f"{key},{_float_cell(value)}" for key, value in payload.items()]
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit(cfg, json.dumps(payload, indent=2) + "\n")


def _emit_json(cfg: RunConfig, payload: dict) -> None:
    _emit(cfg, json.dumps(payload, indent=2) + "\n")


def cmd_arith(args: argparse.Namespace, cfg: RunConfig) -> int:
    f = genarith.get_bijection(args.f)
    operation = genarith.induced_add if args.op == "add" else genarith.induced_mul
    result = operation(f, args.a, args.b, extend=args.extend)
    payload = {"bijection": f.name, "op": args.op, "a": args.a, "b": args.b}
    payload.update(result.to_dict())
    if result.kind is ResultKind.EXTENDED_INVERSE:
        payload["warning"] = "loss of closure"
    _emit_report(cfg, payload)
    return EXIT_CLOSURE if result.kind is ResultKind.OUT_OF_IMAGE else EXIT_OK


def _load_map(source: str) -> regraduation.RegraduationMap:
    maps = regraduation.builtin_maps()
    if source in maps:
        return maps[source]
    ps, gs = [], []
    with open(source, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split(",")
            if lineno == 1 and cells[0].strip().lower() == "p":
                continue  # header row
            if len(cells) != 2:
                raise ValueError(f"{source}:{lineno}: expected two columns p,g")
            ps.append(float(cells[0]))
            gs.append(float(cells[1]))
    return regraduation.from_table(ps, gs, name=os.path.basename(source))


def cmd_check_g(args: argparse.Namespace, cfg: RunConfig) -> int:
    gmap = _load_map(args.map)
    report = regraduation.check_admissibility(gmap, cfg.grid_size, cfg.tol)
    payload = {"name": gmap.name, "formula": gmap.formula}
    payload.update(report.to_dict())
    _emit_report(cfg, payload)
    return EXIT_OK if report.passing else EXIT_ADMISSIBILITY


def cmd_plot_g(args: argparse.Namespace, cfg: RunConfig) -> int:
    _emit(cfg, regraduation.format_plot_csv())
    return EXIT_OK


def cmd_chsh(args: argparse.Namespace, cfg: RunConfig) -> int:
    settings = tuple(args.angles) if args.angles else bell.OPTIMAL_SINGLET_SETTINGS
    s_quantum = bell.chsh_value(bell.singlet_scenario(settings))
    lhv = bell.lhv_chsh_bound()
    if args.scan is not None:
        if args.scan < 2:
            raise ValueError("--scan needs at least 2 grid points")
        lines = ["phi,E_singlet"]
        for phi in np.linspace(0.0, math.pi, args.scan):
            phi = float(phi)
            lines.append(
                f"{_float_cell(phi)},{_float_cell(bell.singlet_correlation(phi))}"
            )
        lines.append(f"# S_quantum={s_quantum!r},S_classical_bound={lhv.bound}")
        _emit(cfg, "\n".join(lines) + "\n")
        return EXIT_OK
    payload = {
        "settings": list(settings),
        "S_quantum": s_quantum,
        "classical_bound": lhv.bound,
        "tsirelson_bound": bell.TSIRELSON_BOUND,
        "exceeds_classical": bool(abs(s_quantum) > lhv.bound + cfg.tol),
        "attains_tsirelson": bool(
            abs(abs(s_quantum) - bell.TSIRELSON_BOUND) <= cfg.tol
        ),
    }
    _emit_report(cfg, payload)
    return EXIT_OK


def cmd_underdetermine(args: argparse.Namespace, cfg: RunConfig) -> int:
    maps = regraduation.builtin_maps()
    if args.g_name not in maps:
        known = ", ".join(sorted(maps))
        raise ValueError(f"unknown map {args.g_name!r} (built-ins: {known})")
    gmap = regraduation.certify(maps[args.g_name], cfg.grid_size, cfg.tol)
    report = bell.underdetermination_demo(gmap, args.p, cfg.grid_size, cfg.tol)
    payload = {"map": gmap.name, "p": args.p}
    payload.update(report.to_dict())
    _emit_json(cfg, payload)
    return EXIT_OK


def cmd_closure_probe(args: argparse.Namespace, cfg: RunConfig) -> int:
    f = genarith.get_bijection(args.f)
    report = genarith.closure_probe(f, args.samples, cfg.seed)
    payload = {"bijection": f.name, "seed": cfg.seed}
    payload.update(report.to_dict())
    _emit_report(cfg, payload)
    return EXIT_CLOSURE if report.violations > 0 else EXIT_OK


def cmd_povm_check(args: argparse.Namespace, cfg: RunConfig) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    povm = quantum.Povm.from_dict(data)
    ok, diagnostics = quantum.validate_povm(povm)
    _emit_json(cfg, {"path": args.path, "valid": ok, "diagnostics": diagnostics})
    return EXIT_OK if ok else EXIT_ADMISSIBILITY


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2 (which this tool
    # reserves for closure failures)
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-size", dest="grid_size", type=int, default=None)
    common.add_argument("--tol", dest="tol", type=float, default=None)
    common.add_argument("--seed", dest="seed", type=int, default=None)
    common.add_argument(
        "--format", dest="output_format", choices=("json", "csv"), default=None
    )
    common.add_argument("--output", dest="output_path", default=None)

    parser = _Parser(prog="regrad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arith", parents=[common], help="evaluate an induced operation")
    p.add_argument("--f", required=True, help="bijection name (identity, artanh, cube)")
    p.add_argument("op", choices=("add", "mul"))
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p.add_argument("--extend", action="store_true", help="apply the declared inverse extension")
    p.set_defaults(handler=cmd_arith)

    p = sub.add_parser("check-g", parents=[common], help="certify a regraduation map")
    p.add_argument("map", help="built-in name or CSV path with columns p,g")
    p.set_defaults(handler=cmd_check_g)

    p = sub.add_parser("plot-g", parents=[common], help="emit the three-map curve CSV")
    p.set_defaults(handler=cmd_plot_g)

    p = sub.add_parser("chsh", parents=[common], help="CHSH value and classical bound")
    p.add_argument("--angles", type=float, nargs=4, metavar=("A", "AP", "B", "BP"), default=None)
    p.add_argument("--scan", type=int, default=None, help="emit an n-row phi,E CSV scan")
    p.set_defaults(handler=cmd_chsh)

    p = sub.add_parser(
        "underdetermine", parents=[common], help="marginal-underdetermination report"
    )
    p.add_argument("g_name", help="built-in map name")
    p.add_argument("p", type=float)
    p.set_defaults(handler=cmd_underdetermine)

    p = sub.add_parser(
        "closure-probe", parents=[common], help="sampled closure check of an induced addition"
    )
    p.add_argument("--f", required=True, help="bijection name")
    p.add_argument("-n", "--samples", type=int, default=10000)
    p.set_defaults(handler=cmd_closure_probe)

    p = sub.add_parser("povm-check", parents=[common], help="validate a POVM from JSON")
    p.add_argument("path", help="JSON file with an 'effects' list of (r0, r) pairs")
    p.set_defaults(handler=cmd_povm_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        return args.handler(args, cfg)
    except AdmissibilityError as exc:
        print(f"regrad: {exc}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except (RegradlabError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"regrad: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
