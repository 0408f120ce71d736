"""Command-line front end: spectrum tables, profile samples, residual and oracle reports.

Exit codes: 0 pass, 1 verification failure, 2 runtime error, 64 usage error.
Machine output goes to ``--output`` (relative paths resolve against
``DKP_S3_OUTPUT_DIR`` when set) or to stdout; a one-line summary is printed
to stdout when a file is written.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .assembler import COMPONENTS, AssemblyOptions, assemble
from .errors import DegenerateEnergyError
from .geometry import geometry_check
from .modes import HelicityClass, ModeSpec, lambda_of, mode_triples, spectral_point
from .oracles import DEFAULT_MESH, MIN_MESH, spectrum_crosscheck
from .verifier import DEFAULT_TOL, Grid2D, verify_all

SCHEMA = "dkp_s3/1"
OUTPUT_DIR_ENV = "DKP_S3_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2, 64
CLASS_NAMES = [c.value for c in HelicityClass]


class UsageError(Exception):
    pass


# deterministic JSON ----------------------------------------------------------

def _format_float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0:
        return "0.0" if math.copysign(1.0, x) > 0 else "-0.0"
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "inf" not in text:
        text += ".0"
    return text


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with 17 significant digits per float and complex values as {re, im}."""
    return _encode(obj, indent, 0) + "\n"


# configuration ----------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    M: float = 0.0
    m: int = 0
    n_r: int = 0
    n_z: int = 0
    helicity_class: HelicityClass = HelicityClass.NONZERO_PLUS
    classes: tuple = (HelicityClass.NONZERO_PLUS,)
    max_n: int = 0
    nr: int = 64
    nz: int = 64
    margin_r: float = 1e-2
    margin_z: float = 1e-2
    tolerance: float = DEFAULT_TOL
    mesh: int = DEFAULT_MESH
    points: int = 100
    seed: int = 0
    perturb: tuple = ()
    reconstruct_unbarred: bool = False
    output: str = None
    fmt: str = "json"

    def mode(self):
        return ModeSpec(self.m, self.n_r, self.n_z, self.M, self.helicity_class)

    def grid(self):
        return Grid2D.chebyshev(self.nr, self.nz, self.margin_r, self.margin_z)


def _parse_perturb(text):
    name, sep, amount = text.partition(":")
    if not sep or name not in COMPONENTS:
        raise UsageError(f"--perturb expects NAME:EPS with NAME in {', '.join(COMPONENTS)}")
    try:
        return name, float(amount)
    except ValueError:
        raise UsageError(f"--perturb amount {amount!r} is not a number") from None


def _config_from_args(args):
    cfg = {"command": args.command, "output": args.output}
    for key in ("M", "m", "n_r", "n_z", "max_n", "nr", "nz", "margin_r", "margin_z",
                "tolerance", "mesh", "points", "seed", "reconstruct_unbarred"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    if hasattr(args, "fmt"):
        cfg["fmt"] = args.fmt
    if getattr(args, "helicity_class", None):
        names = args.helicity_class
        if isinstance(names, str):
            names = [names]
        if "all" in names:
            names = CLASS_NAMES
        classes = tuple(dict.fromkeys(HelicityClass(n) for n in names))
        cfg["classes"] = classes
        cfg["helicity_class"] = classes[0]
    if getattr(args, "perturb", None):
        cfg["perturb"] = tuple(_parse_perturb(p) for p in args.perturb)
    config = RunConfig(**cfg)
    _validate(config)
    return config


def _validate(c):
    if c.M < 0 or not math.isfinite(c.M):
        raise UsageError("--M must be a finite nonnegative number")
    if c.n_r < 0 or c.n_z < 0:
        raise UsageError("--n-r and --n-z must be nonnegative")
    if c.max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    if c.nr < 1 or c.nz < 1:
        raise UsageError("--nr and --nz must be positive")
    if not (0 < c.margin_r < math.pi / 2 and 0 < c.margin_z < math.pi / 2):
        raise UsageError("margins must lie in (0, pi/2)")
    if not c.tolerance > 0:
        raise UsageError("--tol must be positive")
    if c.mesh < MIN_MESH:
        raise UsageError(f"--mesh must be at least {MIN_MESH}")
    if c.points < 1:
        raise UsageError("--points must be positive")
    if c.command == "profile" and c.fmt != "csv":
        raise UsageError("profile output is CSV only")


# commands ------------------------------------------------------------------------

def _mode_fields(mode):
    return {"m": mode.m, "n_r": mode.n_r, "n_z": mode.n_z, "class": mode.helicity_class.value, "M": mode.M}


def _spectrum_rows(config):
    rows = []
    for cls in config.classes:
        for m, n_r, n_z in mode_triples(config.max_n):
            mode = ModeSpec(m, n_r, n_z, config.M, cls)
            row = _mode_fields(mode)
            try:
                point = spectral_point(mode)
            except DegenerateEnergyError as exc:
                row.update({"lambda": lambda_of(m, n_r), "epsilon": None, "sigma_im": 0.0,
                            "diagnostic": "degenerate-energy", "message": str(exc)})
                rows.append((0.0, row))
                continue
            row.update({"lambda": point.lam, "epsilon": point.epsilon, "sigma_im": point.sigma.imag})
            rows.append((point.epsilon, row))
    rows.sort(key=lambda item: (item[0], abs(item[1]["m"]), item[1]["n_r"], item[1]["n_z"],
                                item[1]["m"], item[1]["class"]))
    return [row for _, row in rows]


def cmd_spectrum(config):
    rows = _spectrum_rows(config)
    doc = {"schema": SCHEMA, "command": "spectrum", "M": config.M, "max_n": config.max_n,
           "classes": [c.value for c in config.classes], "rows": rows}
    if config.fmt == "csv":
        buf = io.StringIO()
        cols = ["m", "n_r", "n_z", "class", "M", "lambda", "epsilon", "sigma_im", "diagnostic"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in cols])
        text = buf.getvalue()
    else:
        text = dumps(doc)
    return EXIT_OK, text, f"{len(rows)} modes"


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return _format_float(value) if math.isfinite(value) else ""
    return str(value)


def _assemble(config):
    return assemble(config.mode(), AssemblyOptions(reconstruct_unbarred=config.reconstruct_unbarred))


def cmd_profile(config):
    fld = _assemble(config)
    grid = config.grid()
    values = fld.evaluate(grid.r_points, grid.z_points)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["r", "z"]
    for name in COMPONENTS:
        header += [f"re_{name}", f"im_{name}"]
    writer.writerow(header)
    for i, r in enumerate(grid.r_points):
        for j, z in enumerate(grid.z_points):
            row = [_format_float(r), _format_float(z)]
            for name in COMPONENTS:
                v = complex(values[name][i, j])
                row += [_format_float(v.real), _format_float(v.imag)]
            writer.writerow(row)
    return EXIT_OK, buf.getvalue(), f"{grid.r_points.size * grid.z_points.size} rows"


def cmd_verify(config):
    fld = _assemble(config)
    for name, amount in config.perturb:
        fld = fld.perturbed(name, 1 + amount)
    reports = verify_all(fld, config.grid(), config.tolerance)
    passed = all(rep.passed for rep in reports.values())
    point = spectral_point(config.mode())
    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "mode": _mode_fields(config.mode()),
        "spectral_point": {"lambda": point.lam, "epsilon": point.epsilon, "sigma": point.sigma,
                           "principal_n": point.principal_n},
        "grid": {"nr": config.nr, "nz": config.nz, "margin_r": config.margin_r, "margin_z": config.margin_z},
        "tolerance": config.tolerance,
        "perturbations": [{"component": n, "relative": a} for n, a in config.perturb],
        "passed": passed,
        "reports": {name: rep.to_dict() for name, rep in reports.items()},
    }
    worst = max(rep.max_relative for rep in reports.values())
    summary = f"{'PASS' if passed else 'FAIL'} max relative residual {worst:.3e}"
    return (EXIT_OK if passed else EXIT_FAIL), dumps(doc), summary


def cmd_oracle(config):
    tables = []
    passed = True
    for cls in config.classes:
        table = spectrum_crosscheck(config.max_n, config.M, cls, config.mesh)
        ok = table.passed(config.tolerance)
        passed = passed and ok
        tables.append({
            "class": cls.value,
            "M": config.M,
            "passed": ok,
            "max_relative_deviation": table.max_deviation,
            "skipped": table.skipped,
            "rows": [dict(_mode_fields(row.mode), analytic_epsilon=row.analytic_epsilon,
                          numeric_epsilon=row.numeric_epsilon, analytic_root=row.analytic_root,
                          numeric_root=row.numeric_root, relative_deviation=row.relative_deviation,
                          richardson_estimate=row.error_estimate)
                     for row in table.rows],
        })
    doc = {"schema": SCHEMA, "command": "oracle", "mesh": config.mesh, "tolerance": config.tolerance,
           "passed": passed, "tables": tables}
    worst = max((t["max_relative_deviation"] for t in tables), default=0.0)
    return (EXIT_OK if passed else EXIT_FAIL), dumps(doc), f"{'PASS' if passed else 'FAIL'} max deviation {worst:.3e}"


def cmd_geometry_check(config):
    rep = geometry_check(config.points, config.seed)
    passed = rep.passed()
    doc = {"schema": SCHEMA, "command": "geometry-check", "points": rep.points, "seed": config.seed,
           "passed": passed, "tetrad_error": rep.tetrad_error, "christoffel_error": rep.christoffel_error,
           "ricci_rotation_error": rep.ricci_error, "determinant_error": rep.determinant_error,
           "christoffel_symmetry_error": rep.symmetry_error, "nonzero_ricci_rotation": rep.nonzero_ricci}
    return (EXIT_OK if passed else EXIT_FAIL), dumps(doc), f"{'PASS' if passed else 'FAIL'} geometry"


COMMANDS = {
    "spectrum": cmd_spectrum,
    "profile": cmd_profile,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "geometry-check": cmd_geometry_check,
}


# argument parsing ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_mode(p):
    p.add_argument("--M", type=float, default=0.0, help="mass (default 0)")
    p.add_argument("--m", type=int, default=0, help="azimuthal number")
    p.add_argument("--n-r", dest="n_r", type=int, default=0)
    p.add_argument("--n-z", dest="n_z", type=int, default=0)
    p.add_argument("--class", dest="helicity_class", choices=CLASS_NAMES, default="nonzero-plus")


def _add_grid(p):
    p.add_argument("--nr", type=int, default=64)
    p.add_argument("--nz", type=int, default=64)
    p.add_argument("--margin-r", dest="margin_r", type=float, default=1e-2)
    p.add_argument("--margin-z", dest="margin_z", type=float, default=1e-2)


def build_parser():
    parser = _Parser(prog="dkp-s3", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="closed-form spectrum table")
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--max-n", dest="max_n", type=int, default=2)
    p.add_argument("--class", dest="helicity_class", action="append", choices=CLASS_NAMES + ["all"])
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")

    p = sub.add_parser("profile", help="sample all ten components on a grid (CSV)")
    _add_mode(p)
    _add_grid(p)
    p.add_argument("--reconstruct-unbarred", action="store_true")
    p.add_argument("--format", dest="fmt", choices=["csv"], default="csv")

    p = sub.add_parser("verify", help="residual report for one assembled mode")
    _add_mode(p)
    _add_grid(p)
    p.add_argument("--tol", dest="tolerance", type=float, default=DEFAULT_TOL)
    p.add_argument("--perturb", action="append", metavar="NAME:EPS",
                   help="multiply one component by (1 + EPS) before checking")
    p.add_argument("--reconstruct-unbarred", action="store_true")

    p = sub.add_parser("oracle", help="finite-difference spectrum versus closed form")
    p.add_argument("--M", type=float, default=0.0)
    p.add_argument("--max-n", dest="max_n", type=int, default=2)
    p.add_argument("--class", dest="helicity_class", action="append", choices=CLASS_NAMES + ["all"])
    p.add_argument("--mesh", type=int, default=DEFAULT_MESH)
    p.add_argument("--tol", dest="tolerance", type=float, default=1e-6)

    p = sub.add_parser("geometry-check", help="tetrad and connection identities at random points")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    for p in sub.choices.values():
        p.add_argument("--output", "-o", default=None, help="write machine output here instead of stdout")
    return parser


def _output_path(path):
    path = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "helicity_class", None) is None and args.command in ("spectrum", "oracle"):
        args.helicity_class = ["nonzero-plus"]
    try:
        config = _config_from_args(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dkp-s3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, text, summary = COMMANDS[config.command](config)
    except (ArithmeticError, ValueError, RuntimeError, ZeroDivisionError) as exc:
        doc = {"schema": SCHEMA, "command": config.command,
               "error": {"type": type(exc).__name__, "message": str(exc)}}
        text, code, summary = dumps(doc), EXIT_RUNTIME, f"ERROR {type(exc).__name__}: {exc}"
    if config.output:
        path = _output_path(config.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")
        print(summary)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
