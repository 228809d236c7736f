"""Command-line interface.

Five subcommands: ``spectrum`` (closed-form levels), ``wavefunction``
(normalized radial profiles on a grid), ``hardwall`` (wall spectra,
optionally cross-checked by the shooting solver), ``oracle`` (shooting
eigenvalues against their closed-form references), and ``verify`` (the
built-in check suites).

Tables go to stdout or --out as CSV (header row, comma separator, LF
endings) or JSON (one object: "meta" echoing the run settings plus a
units note, "rows" with one object per row).  All floats are printed
with 17 significant digits so re-parsing reproduces them bit-exactly,
and a given invocation always produces byte-identical output.

A plain key=value config file (--config) can hold any of the flag
values, with explicit flags taking precedence.  Exit codes: 0 success,
1 verification/computation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError, NumericsError
from .geometry import DislocationParams
from .hard_wall import HardWallConfig, approx_energy, exact_energy
from .oscillator import (
    QuantumNumbers,
    _x_peak,
    bound_state,
    energy_level,
    lambda_of_energy,
    normalize,
    radial_R,
)
from .shooting import ShootingConfig, find_eigenvalue
from .verify import SUITES, run_suites

__all__ = ["main"]


class UsageError(Exception):
    """Bad flags, bad config values, or an impossible request."""


# every settable key, with its parser and the commands it applies to
_FLOAT_KEYS = ("mass", "omega", "beta", "k", "r0", "r-min", "r-max",
               "perturb-energy")
_INT_KEYS = ("n-max", "l-max", "n", "l", "samples")
_STR_KEYS = ("format", "out", "suite")
_BOOL_KEYS = ("with-oracle",)

_DEFAULTS = {
    "spectrum": {"mass": 1.0, "omega": 1.0, "beta": 0.0, "k": 0.0,
                 "n-max": 3, "l-max": 3, "format": "csv", "out": None},
    "wavefunction": {"mass": 1.0, "omega": 1.0, "beta": 0.0, "k": 0.0,
                     "n": 0, "l": 0, "r-min": 0.0, "r-max": None,
                     "samples": 4001, "format": "csv", "out": None},
    "hardwall": {"mass": 1.0, "omega": 1.0, "beta": 0.0, "k": 0.0,
                 "r0": None, "n-max": 15, "l-max": 1,
                 "with-oracle": False, "format": "csv", "out": None},
    "oracle": {"mass": 1.0, "omega": 1.0, "beta": 0.0, "k": 0.0,
               "n-max": 2, "l-max": 2, "r0": None, "r-min": None,
               "r-max": None, "format": "csv", "out": None},
    "verify": {"suite": "all", "perturb-energy": 0.0},
}


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _BOOL_KEYS:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        return raw
    except ValueError:
        raise UsageError(f"bad value for {key!r}: {raw!r}") from None


def _read_config(path: str, allowed: set[str]) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(
                        f"{path}:{line_no}: expected key=value, got {line!r}"
                    )
                key, raw = (part.strip() for part in line.split("=", 1))
                if key not in allowed:
                    raise UsageError(f"{path}:{line_no}: unknown key {key!r}")
                values[key] = _parse_value(key, raw)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    return values


def _merge_settings(command: str, args: argparse.Namespace) -> dict:
    """Layered settings: built-in defaults, then config file, then flags."""
    settings = dict(_DEFAULTS[command])
    config_path = getattr(args, "config", None)
    if config_path is not None:
        settings.update(_read_config(config_path, set(settings)))
    for key in settings:
        flag_val = getattr(args, key.replace("-", "_"), None)
        if flag_val is not None:
            settings[key] = flag_val
    settings["config"] = config_path
    return settings


def _params(s: dict) -> DislocationParams:
    try:
        return DislocationParams(beta=s["beta"], mass=s["mass"], omega=s["omega"])
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


# ------------------------------------------------------------ output layer

def _fmt_float(v: float) -> str:
    return "%.17g" % (float(v) + 0.0)  # +0.0 folds -0.0 into 0


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v)
    return str(v)


def _json_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v)
    return json.dumps(str(v))


def _render(fmt: str, header: list[str], rows: list[tuple], meta: dict) -> str:
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt_cell(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        meta_txt = ",".join(
            f"{json.dumps(k)}:{_json_scalar(v)}" for k, v in meta.items()
        )
        row_txts = []
        for row in rows:
            cells = ",".join(
                f"{json.dumps(name)}:{_json_scalar(v)}"
                for name, v in zip(header, row) if v is not None
            )
            row_txts.append("{" + cells + "}")
        return ('{"meta":{' + meta_txt + '},"rows":['
                + ",".join(row_txts) + "]}\n")
    raise UsageError(f"unknown format {fmt!r} (choose csv or json)")


def _emit(s: dict, header: list[str], rows: list[tuple], meta: dict) -> None:
    text = _render(s["format"], header, rows, meta)
    out = s.get("out")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _meta(command: str, s: dict) -> dict:
    keys = ("mass", "omega", "beta", "k", "n-max", "l-max", "n", "l", "r0",
            "r-min", "r-max", "samples", "with-oracle", "suite", "format",
            "out", "config")
    meta = {"command": command, "units": "hbar=c=1"}
    for key in keys:
        meta[key.replace("-", "_")] = s.get(key)
    return meta


# -------------------------------------------------------------- subcommands

def _cmd_spectrum(s: dict) -> int:
    p = _params(s)
    _require(p.omega > 0.0, "spectrum needs omega > 0")
    _require(s["n-max"] >= 0 and s["l-max"] >= 0, "n-max and l-max must be >= 0")
    p_flat = DislocationParams(beta=0.0, mass=p.mass, omega=p.omega)
    k = s["k"]
    rows = []
    for n in range(s["n-max"] + 1):
        for l in range(-s["l-max"], s["l-max"] + 1):
            qn = QuantumNumbers(n=n, l=l, k=k)
            e = energy_level(p, qn)
            rows.append((n, l, k, e, lambda_of_energy(p, k, e),
                         energy_level(p_flat, qn), e - energy_level(p_flat, qn)))
    _emit(s, ["n", "l", "k", "E", "lambda", "E_flat", "shift"], rows,
          _meta("spectrum", s))
    return 0


def _cmd_wavefunction(s: dict) -> int:
    p = _params(s)
    _require(p.omega > 0.0, "wavefunction needs omega > 0 (bound states)")
    _require(s["samples"] >= 2, "samples must be >= 2")
    try:
        qn = QuantumNumbers(n=s["n"], l=s["l"], k=s["k"])
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    state = normalize(bound_state(p, qn))
    r_min = s["r-min"]
    r_max = s["r-max"]
    if r_max is None:
        # far enough out that the density has decayed below ~e^-45
        x_cut = _x_peak(state) + 45.0
        r_max = math.sqrt(x_cut / (p.mass * p.omega) - p.beta ** 2)
    _require(0.0 <= r_min < r_max, "need 0 <= r-min < r-max")
    r = np.linspace(r_min, r_max, s["samples"])
    big_r = np.asarray(radial_R(state, r))
    rows = [
        (float(ri), float(v.real), float(v.imag), float(abs(v) ** 2),
         float(np.angle(v)))
        for ri, v in zip(r, big_r)
    ]
    _emit(s, ["r", "re_R", "im_R", "abs_R2", "phase"], rows,
          _meta("wavefunction", s))
    return 0


def _cmd_hardwall(s: dict) -> int:
    p = _params(s)
    _require(s["r0"] is not None, "hardwall needs --r0")
    _require(s["r0"] > 0.0, "r0 must be > 0")
    _require(s["n-max"] >= 0 and s["l-max"] >= 0, "n-max and l-max must be >= 0")
    with_exact = p.omega > 0.0
    shoot_cfg = ShootingConfig(wall_radius=s["r0"]) if s["with-oracle"] else None
    rows = []
    for n in range(s["n-max"] + 1):
        for l in range(s["l-max"] + 1):
            cfg = HardWallConfig(r0=s["r0"], params=p, l=l, k=s["k"])
            e_a = approx_energy(cfg, n)
            row = [n, l, e_a]
            if with_exact:
                e_x = exact_energy(cfg, n)
                row += [e_x, abs(e_x - e_a) / abs(e_x)]
            if s["with-oracle"]:
                row.append(find_eigenvalue(p, l, s["k"], n, shoot_cfg))
            rows.append(tuple(row))
    header = ["n", "l", "E_approx"]
    if with_exact:
        header += ["E_exact", "rel_gap"]
    if s["with-oracle"]:
        header.append("E_oracle")
    _emit(s, header, rows, _meta("hardwall", s))
    return 0


def _cmd_oracle(s: dict) -> int:
    p = _params(s)
    _require(s["n-max"] >= 0 and s["l-max"] >= 0, "n-max and l-max must be >= 0")
    wall = s["r0"]
    _require(wall is None or wall > 0.0, "r0 must be > 0")
    _require(p.omega > 0.0 or wall is not None,
             "omega = 0 has bound states only with a wall; give --r0")
    overrides = {}
    if s["r-min"] is not None:
        overrides["r_min"] = s["r-min"]
    if s["r-max"] is not None:
        overrides["r_max"] = s["r-max"]
    if wall is not None:
        overrides["wall_radius"] = wall
    try:
        cfg = ShootingConfig(**overrides)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    k = s["k"]
    rows = []
    for n in range(s["n-max"] + 1):
        for l in range(-s["l-max"], s["l-max"] + 1):
            e_o = find_eigenvalue(p, l, k, n, cfg)
            if wall is None:
                e_ref = energy_level(p, QuantumNumbers(n=n, l=l, k=k))
            elif p.omega > 0.0:
                e_ref = exact_energy(HardWallConfig(r0=wall, params=p, l=l, k=k), n)
            else:
                e_ref = None
            err = None if e_ref is None else abs(e_o - e_ref)
            rows.append((n, l, k, e_o, e_ref, err))
    header = ["n", "l", "k", "E_oracle", "E_ref", "abs_err"]
    if wall is not None and p.omega == 0.0:
        header = header[:4]
        rows = [row[:4] for row in rows]
    _emit(s, header, rows, _meta("oracle", s))
    return 0


def _cmd_verify(s: dict) -> int:
    suite = s["suite"]
    names = None if suite == "all" else [suite]
    if names is not None and names[0] not in SUITES:
        raise UsageError(
            f"unknown suite {suite!r}; choose all, {', '.join(SUITES)}"
        )
    results = run_suites(names, perturb_energy=s["perturb-energy"])
    n_fail = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        n_fail += 0 if res.passed else 1
        line = (f"[{tag}] {res.suite}: {res.name}  "
                f"measured={res.measured:.3e}  tol={res.tolerance:.3e}")
        if res.detail:
            line += f"  ({res.detail})"
        print(line)
    print(f"{len(results)} checks, {n_fail} failed")
    return 0 if n_fail == 0 else 1


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "hardwall": _cmd_hardwall,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
}


# ------------------------------------------------------------------ parser

def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="table format (default csv)")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="write the table here instead of stdout")
    p.add_argument("--config", default=None, metavar="PATH",
                   help="key=value file supplying any of this command's flags")


def _add_medium_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mass", type=float, default=None, help="particle mass m")
    p.add_argument("--omega", type=float, default=None, help="trap frequency w")
    p.add_argument("--beta", type=float, default=None,
                   help="dislocation parameter (0 = flat space)")
    p.add_argument("--k", type=float, default=None, help="axial wavenumber")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiralosc",
        description="Spectra and wavefunctions of a harmonic oscillator "
                    "around a spiral dislocation (hbar = c = 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form energy levels")
    _add_medium_flags(p)
    p.add_argument("--n-max", type=int, default=None, help="largest radial n")
    p.add_argument("--l-max", type=int, default=None, help="largest |l|")
    _add_output_flags(p)

    p = sub.add_parser("wavefunction", help="normalized radial profile")
    _add_medium_flags(p)
    p.add_argument("--n", type=int, default=None, help="radial quantum number")
    p.add_argument("--l", type=int, default=None, help="angular quantum number")
    p.add_argument("--r-min", type=float, default=None, help="grid start")
    p.add_argument("--r-max", type=float, default=None,
                   help="grid end (default: past the density tail)")
    p.add_argument("--samples", type=int, default=None, help="grid points")
    _add_output_flags(p)

    p = sub.add_parser("hardwall", help="energy levels with a wall at r0")
    _add_medium_flags(p)
    p.add_argument("--r0", type=float, default=None, help="wall radius")
    p.add_argument("--n-max", type=int, default=None, help="largest radial n")
    p.add_argument("--l-max", type=int, default=None, help="largest l (l >= 0)")
    p.add_argument("--with-oracle", action="store_true", default=None,
                   help="add a shooting-solver column")
    _add_output_flags(p)

    p = sub.add_parser("oracle", help="shooting eigenvalues vs closed forms")
    _add_medium_flags(p)
    p.add_argument("--n-max", type=int, default=None, help="largest radial n")
    p.add_argument("--l-max", type=int, default=None, help="largest |l|")
    p.add_argument("--r0", type=float, default=None,
                   help="optional wall radius (Dirichlet mode)")
    p.add_argument("--r-min", type=float, default=None, help="integration start")
    p.add_argument("--r-max", type=float, default=None, help="integration end")
    _add_output_flags(p)

    p = sub.add_parser("verify", help="run the built-in check suites")
    p.add_argument("--suite", default=None,
                   choices=("all",) + tuple(SUITES),
                   help="which suite to run (default all)")
    p.add_argument("--perturb-energy", type=float, default=None,
                   help=argparse.SUPPRESS)
    p.add_argument("--config", default=None, metavar="PATH",
                   help="key=value file supplying any of this command's flags")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _merge_settings(args.command, args)
        return _DISPATCH[args.command](settings)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, BracketError, ConvergenceError, NumericsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
