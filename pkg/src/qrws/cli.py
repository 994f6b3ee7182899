"""
Command-line front end.

Subcommands: ``run``, ``sweep``, ``curve``, ``width``, ``optimize-alpha``, ``verify``.

Every flag has a JSON-config equivalent (the flag name with dashes replaced by
underscores). Values are resolved as built-in defaults, then ``--config``,
then explicit flags. ``--dump-config`` prints the resolved configuration and
exits; feeding it back through ``--config`` reproduces the same output.

Angles accept decimal radians or multiples of π such as ``pi``, ``pi/2``,
``3pi/2``, ``-2*pi/3``.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import Optional, Sequence

from . import emit
from .coins import CoinParams, PhaseRelation, Relation
from .landscape import (
    ProbabilityCurve,
    ThresholdMode,
    optimize_alpha,
    probability_curve,
    robustness_width,
    sample_landscape,
)
from .verification import verify_suite
from .walk import Circuit, WalkConfig, qrws_run

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

_PI_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi(?:\s*/\s*(?P<den>\d+(?:\.\d*)?))?$"
)


def parse_angle(text) -> float:
    """Parse radians, accepting symbolic multiples of π."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    s = str(text).strip().lower().replace("π", "pi")
    match = _PI_RE.match(s)
    if match:
        coef = float(match["coef"]) if match["coef"] else 1.0
        den = float(match["den"]) if match["den"] else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in angle {text!r}")
        value = coef * math.pi / den
        return -value if match["sign"] == "-" else value
    try:
        value = float(s)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite (got {text!r})")
    return value


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _angle_arg(text):
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# Built-in defaults per subcommand. Keys double as JSON-config keys.
DEFAULTS = {
    "run": dict(
        m=4, phi=math.pi, zeta=math.pi, omega=0.0, circuit="standard", marked=0,
        iterations=None, distribution=False, out=None, precision=17,
    ),
    "sweep": dict(
        m=4, omega=0.0, mode="grid", n_phi=33, n_zeta=33, samples=100, seed=0,
        out=None, precision=17,
    ),
    "curve": dict(
        m=4, omega=0.0, relation="const-pi", alpha=0.0, n_phi=512, circuit=None,
        out=None, precision=17,
    ),
    "width": dict(
        m=4, omega=0.0, relation="const-pi", alpha=0.0, n_phi=512, circuit=None,
        curve_file=None, threshold_mode="relative", threshold=0.9, out=None, precision=17,
    ),
    "optimize-alpha": dict(
        m=4, omega=0.0, relation="eq6", alpha_min=-1.0, alpha_max=1.0, n_phi=512,
        circuit=None, threshold_mode="relative", threshold=0.9, out=None, precision=17,
    ),
    "verify": dict(m=4, samples=50, seed=0, out=None, precision=17),
}
_ANGLE_KEYS = {"phi", "zeta", "omega"}
_INT_KEYS = {"m", "marked", "iterations", "n_phi", "n_zeta", "samples", "seed", "precision"}
_FLOAT_KEYS = {"alpha", "alpha_min", "alpha_max", "threshold"}
_CHOICES = {
    "circuit": [c.value for c in Circuit],
    "mode": ["grid", "random"],
    "relation": [r.value for r in Relation],
    "threshold_mode": [t.value for t in ThresholdMode],
}

_HELP = {
    "m": "hypercube (and coin) dimension",
    "phi": "Householder reflection phase",
    "zeta": "walk-coin phase multiplier",
    "omega": "marking-coin phase",
    "alpha": "sinusoidal amplitude of the phase relation",
    "relation": "phase relation zeta(phi)",
    "circuit": "standard (with marking coin) or alt (no marking coin); "
    "curves default to alt for eq14 and standard otherwise",
    "marked": "index of the marked node",
    "iterations": "number of iterations (default: ceil(pi/2 sqrt(2^(m-1))))",
    "distribution": "include the full node distribution",
    "mode": "lattice or seeded uniform sampling",
    "curve_file": "read a phi,zeta,p CSV instead of simulating",
    "out": "output path (default: stdout)",
    "precision": "significant digits for floats",
}


def _add_flag(p: argparse.ArgumentParser, key: str, default) -> None:
    flag = "--" + key.replace("_", "-")
    kw = dict(dest=key, default=argparse.SUPPRESS, help=_HELP.get(key))
    if isinstance(default, bool):
        p.add_argument(flag, action="store_true", **kw)
        return
    if key in _ANGLE_KEYS:
        kw["type"] = _angle_arg
    elif key in _INT_KEYS:
        kw["type"] = int
    elif key in _FLOAT_KEYS:
        kw["type"] = float
    if key in _CHOICES:
        kw["choices"] = _CHOICES[key]
    p.add_argument(flag, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qrws", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, defaults in DEFAULTS.items():
        p = sub.add_parser(name)
        for key, default in defaults.items():
            _add_flag(p, key, default)
        p.add_argument("--config", dest="config_path", default=None, help="JSON config file")
        p.add_argument("--dump-config", action="store_true", help="print resolved config and exit")
    return parser


def _coerce(key: str, value):
    if value is None:
        return None
    if key in _ANGLE_KEYS:
        return parse_angle(value)
    if key in _INT_KEYS:
        if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
            raise UsageError(f"{key} must be an integer (got {value!r})")
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key == "distribution":
        return bool(value)
    if key in _CHOICES and value not in _CHOICES[key]:
        raise UsageError(f"{key} must be one of {_CHOICES[key]} (got {value!r})")
    return value


def resolve_config(command: str, args: argparse.Namespace) -> dict:
    config = dict(DEFAULTS[command])
    if args.config_path:
        try:
            with open(args.config_path) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config_path}: {exc}") from None
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        if loaded.pop("command", command) != command:
            raise UsageError("config is for a different subcommand")
        unknown = set(loaded) - set(config)
        if unknown:
            raise UsageError(f"unknown config keys for {command}: {sorted(unknown)}")
        config.update(loaded)
    for key in DEFAULTS[command]:
        if hasattr(args, key):
            config[key] = getattr(args, key)
    try:
        return {k: _coerce(k, v) for k, v in config.items()}
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_run(cfg: dict) -> str:
    m = cfg["m"]
    config = WalkConfig(
        m,
        CoinParams(cfg["phi"], cfg["zeta"], cfg["omega"], m),
        circuit=cfg["circuit"],
        marked=cfg["marked"],
        iterations=cfg["iterations"],
    )
    result = qrws_run(config)
    report = {
        "m": m,
        "k": result.iterations_used,
        "phi": config.coin.phi,
        "zeta": config.coin.zeta,
        "omega": config.coin.omega,
        "circuit": config.circuit.value,
        "marked": config.marked,
        "p": result.success_probability,
    }
    if cfg["distribution"]:
        report["distribution"] = [float(v) for v in result.node_distribution]
    return emit.dumps(report, cfg["precision"]) + "\n"


def cmd_sweep(cfg: dict) -> str:
    if cfg["mode"] == "grid":
        samples = sample_landscape(cfg["m"], cfg["omega"], grid=(cfg["n_phi"], cfg["n_zeta"]))
    else:
        samples = sample_landscape(cfg["m"], cfg["omega"], n_samples=cfg["samples"], seed=cfg["seed"])
    rows = ((s.phi, s.zeta, s.omega, s.m, s.k, s.p) for s in samples)
    return emit.csv_text(("phi", "zeta", "omega", "m", "k", "p"), rows, cfg["precision"])


def _relation(cfg: dict) -> PhaseRelation:
    return PhaseRelation(Relation(cfg["relation"]), cfg["alpha"], cfg["omega"])


def cmd_curve(cfg: dict) -> str:
    curve = probability_curve(cfg["m"], cfg["omega"], _relation(cfg), cfg["n_phi"], cfg["circuit"])
    rows = zip(curve.phi, curve.zeta, curve.p)
    return emit.csv_text(("phi", "zeta", "p"), rows, cfg["precision"])


def cmd_width(cfg: dict) -> str:
    if cfg["curve_file"]:
        try:
            phi, zeta, p = emit.read_curve_csv(cfg["curve_file"])
        except OSError as exc:
            raise UsageError(f"cannot read curve file: {exc}") from None
        curve = ProbabilityCurve(cfg["m"], cfg["omega"], None, phi, zeta, p)
    else:
        curve = probability_curve(
            cfg["m"], cfg["omega"], _relation(cfg), cfg["n_phi"], cfg["circuit"]
        )
    report = robustness_width(curve, cfg["threshold_mode"], cfg["threshold"])
    return emit.dumps(report.as_dict(), cfg["precision"]) + "\n"


def cmd_optimize_alpha(cfg: dict) -> str:
    report = optimize_alpha(
        cfg["m"],
        cfg["omega"],
        cfg["relation"],
        (cfg["alpha_min"], cfg["alpha_max"]),
        cfg["n_phi"],
        cfg["threshold_mode"],
        cfg["threshold"],
        cfg["circuit"],
    )
    return emit.dumps(report.as_dict(), cfg["precision"]) + "\n"


def cmd_verify(cfg: dict) -> tuple[str, bool]:
    report = verify_suite(cfg["m"], cfg["samples"], cfg["seed"])
    return emit.dumps(report, cfg["precision"]) + "\n", report["passed"]


COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "curve": cmd_curve,
    "width": cmd_width,
    "optimize-alpha": cmd_optimize_alpha,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args.command, args)
        if args.dump_config:
            emit.write_text(emit.dumps({"command": args.command, **cfg}) + "\n", None)
            return EXIT_OK
        outcome = COMMANDS[args.command](cfg)
        text, passed = outcome if isinstance(outcome, tuple) else (outcome, True)
        emit.write_text(text, cfg["out"])
    except (UsageError, ValueError, TypeError, OSError) as exc:
        print(f"qrws {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if passed else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
