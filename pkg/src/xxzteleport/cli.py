"""Command-line front end.

Subcommands ``point``, ``sweep``, ``threshold``, ``contour`` and ``validate``
write CSV (or a plain-text report) to standard output or ``--out``.

An optional ``--config`` file holds defaults, one ``key = value`` per line
with ``#`` comments.  Keys are the long flag names without dashes
(``j1``, ``delta``, ``temp``, ``range`` ...).  ``range`` and ``count`` may be
repeated, the first line applying to axis1 and the second to axis2.  Flags
given on the command line override the file.

Exit status: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from contextlib import contextmanager
from pathlib import Path

from .model import DomainError, ModelParams
from .sweep import (
    AXIS_NAMES,
    THRESHOLD_QUANTITIES,
    Axis,
    NoSignChangeError,
    SpecError,
    SweepSpec,
    contour,
    point,
    sweep,
    threshold,
    write_contour_csv,
    write_csv,
)
from .validate import run_validation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

BUILTIN_DEFAULTS = {
    "j1": 1.0,
    "delta": 1.0,
    "h": 0.0,
    "temp": None,
    "theta": math.pi / 2,
    "phi": 0.0,
    "axis1": None,
    "axis2": None,
    "range": None,
    "count": None,
    "quantity": None,
    "bracket": None,
    "out": None,
    "seed": 42,
    "samples": 1000,
    "jobs": 1,
}

# flag dest -> parameter name used by the library
PARAM_KEYS = {"j1": "J1", "delta": "Delta", "h": "h", "temp": "T", "theta": "theta", "phi": "phi"}

_FLOAT_KEYS = {"j1", "delta", "h", "temp", "theta", "phi"}
_INT_KEYS = {"seed", "samples", "jobs"}


class UsageError(Exception):
    pass


def read_config(path: str | Path) -> dict:
    """Parse a flat ``key = value`` file; repeated keys collect into a list."""
    config: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in BUILTIN_DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        config.setdefault(key, []).append(value)
    return config


def _convert(key: str, values: list[str]):
    try:
        if key in _FLOAT_KEYS:
            return float(values[-1])
        if key in _INT_KEYS:
            return int(values[-1])
        if key == "range":
            return [[float(x) for x in v.replace(",", " ").split()] for v in values]
        if key == "count":
            return [int(v) for v in values]
        if key == "bracket":
            return [float(x) for x in values[-1].replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"config value for {key!r}: {exc}") from None
    return values[-1]


def resolve(args: argparse.Namespace) -> dict:
    """Merge built-in defaults, the config file, and explicit flags."""
    settings = dict(BUILTIN_DEFAULTS)
    if args.config:
        try:
            config = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        settings.update({k: _convert(k, v) for k, v in config.items()})
    for key in BUILTIN_DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--j1", type=float, help="Ising coupling J1/J (default 1)")
    p.add_argument("--delta", type=float, help="XXZ anisotropy Delta (default 1)")
    p.add_argument("--h", type=float, help="magnetic field h/J (default 0)")
    p.add_argument("--temp", type=float, help="temperature T/J (> 0)")
    p.add_argument("--theta", type=float, help="input angle theta in [0, pi] (default pi/2)")
    p.add_argument("--phi", type=float, help="input phase phi (default 0)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value defaults file")
    p.add_argument("--out", help="write output here instead of stdout")


def _add_axes(p: argparse.ArgumentParser, two_required: bool = False) -> None:
    p.add_argument("--axis1", choices=AXIS_NAMES, help="first (outer) grid axis")
    p.add_argument("--axis2", choices=AXIS_NAMES, help="second (inner) grid axis")
    p.add_argument(
        "--range", nargs=2, type=float, action="append", metavar=("START", "STOP"),
        help="axis range; give once per axis, in axis order",
    )
    p.add_argument("--count", type=int, action="append", help="grid points per axis, in axis order")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxzteleport",
        description="Teleportation through XXZ dimers of an Ising-XXZ diamond chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate one parameter point")
    _add_param_flags(p)
    _add_common(p)

    p = sub.add_parser("sweep", help="1D or 2D grid of parameter points as CSV")
    _add_param_flags(p)
    _add_axes(p)
    p.add_argument("--jobs", type=int, help="worker processes (row order is unaffected)")
    _add_common(p)

    p = sub.add_parser(
        "threshold",
        help="bisect for a threshold in T or h",
        description=(
            "Bisect the signed defining function of a threshold to 1e-6 in the scan "
            "parameter (--axis1, T or h).  At very low T the average fidelity falls "
            "steeply with field; keep the bracket around the single crossing you want."
        ),
    )
    _add_param_flags(p)
    p.add_argument("--quantity", choices=THRESHOLD_QUANTITIES)
    p.add_argument("--axis1", choices=("T", "h"), help="scan parameter")
    p.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"))
    _add_common(p)

    p = sub.add_parser("contour", help="F_A = 2/3 boundary in a parameter plane")
    _add_param_flags(p)
    _add_axes(p)
    _add_common(p)

    p = sub.add_parser("validate", help="run the oracle cross-check suites")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    _add_common(p)
    return parser


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _fixed_values(s: dict, exclude=()) -> dict:
    fixed = {}
    for key, name in PARAM_KEYS.items():
        if name in exclude or s[key] is None:
            continue
        fixed[name] = float(s[key])
    return fixed


def _axes(s: dict, need_two: bool) -> tuple[Axis, Axis | None]:
    names = [s["axis1"], s["axis2"]]
    if names[0] is None:
        raise UsageError("--axis1 is required")
    if need_two and names[1] is None:
        raise UsageError("--axis2 is required")
    n_axes = 2 if names[1] is not None else 1
    ranges = s["range"] or []
    counts = s["count"] or []
    if len(ranges) < n_axes or len(counts) < n_axes:
        raise UsageError(f"give --range and --count once per axis ({n_axes} needed)")
    axes = [Axis(names[k], ranges[k][0], ranges[k][1], counts[k]) for k in range(n_axes)]
    return axes[0], (axes[1] if n_axes == 2 else None)


def _cmd_point(s: dict) -> int:
    if s["temp"] is None:
        raise UsageError("--temp is required")
    params = ModelParams(J1=s["j1"], Delta=s["delta"], h=s["h"])
    row = point(params, s["temp"], s["theta"], s["phi"])
    with _output(s["out"]) as fh:
        write_csv([row], fh)
    return EXIT_OK


def _cmd_sweep(s: dict) -> int:
    axis1, axis2 = _axes(s, need_two=False)
    names = {axis1.name} | ({axis2.name} if axis2 else set())
    spec = SweepSpec(axis1, axis2, _fixed_values(s, exclude=names))
    rows = sweep(spec, jobs=s["jobs"])
    with _output(s["out"]) as fh:
        write_csv(rows, fh)
    return EXIT_OK


def _cmd_threshold(s: dict) -> int:
    if s["quantity"] is None:
        raise UsageError("--quantity is required")
    if s["axis1"] is None:
        raise UsageError("--axis1 (T or h) is required")
    if not s["bracket"] or len(s["bracket"]) != 2:
        raise UsageError("--bracket LO HI is required")
    scan = s["axis1"]
    value = threshold(s["quantity"], scan, _fixed_values(s, exclude={scan}), tuple(s["bracket"]))
    with _output(s["out"]) as fh:
        fh.write(f"quantity,scan,value\n{s['quantity']},{scan},{value:.12g}\n")
    return EXIT_OK


def _cmd_contour(s: dict) -> int:
    axis1, axis2 = _axes(s, need_two=True)
    result = contour(axis1, axis2, _fixed_values(s, exclude={axis1.name, axis2.name}))
    with _output(s["out"]) as fh:
        write_contour_csv(result, fh)
    print(
        f"# {result.empty_columns} of {result.columns} columns have no F_A = 2/3 crossing",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_validate(s: dict) -> int:
    if s["samples"] < 1:
        raise UsageError("--samples must be at least 1")
    report = run_validation(s["seed"], s["samples"])
    with _output(s["out"]) as fh:
        fh.write(report.text())
    return EXIT_OK if report.passed else EXIT_VALIDATION


COMMANDS = {
    "point": _cmd_point,
    "sweep": _cmd_sweep,
    "threshold": _cmd_threshold,
    "contour": _cmd_contour,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve(args)
        return COMMANDS[args.command](settings)
    except NoSignChangeError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, SpecError, DomainError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
