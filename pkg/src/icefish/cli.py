"""Command-line front end: ``icefish {solve,sweep,bondstar,converge,validate,energy}``.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 validation failure.
"""
from __future__ import annotations

import argparse
import json
import math
import platform
import sys
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from . import analysis
from .errors import IcefishError, NoFixedPointError, NumericalError
from .gevp import solve_gevp
from .io import write_table
from .polybasis import Geometry

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VALIDATION = 0, 1, 2, 3
PROFILE_POINTS = 512


class Command(str, Enum):
    SOLVE = "solve"
    SWEEP = "sweep"
    BONDSTAR = "bondstar"
    CONVERGE = "converge"
    VALIDATE = "validate"
    ENERGY = "energy"


class UsageError(IcefishError):
    """Bad flag value; the message names the flag."""


@dataclass(frozen=True)
class GridSpec:
    min: float = 1.0
    max: float = 1000.0
    points: int = 32
    scale: str = "log"

    def values(self) -> list[float]:
        if self.points == 1:
            return [float(self.min)]
        if self.scale == "log":
            return [float(v) for v in np.geomspace(self.min, self.max, self.points)]
        return [float(v) for v in np.linspace(self.min, self.max, self.points)]


@dataclass(frozen=True)
class RunConfig:
    command: Command
    geometry: Geometry = Geometry.STRIP
    m: int | None = None
    bond: float = 1.0
    n: int | None = None
    count: int = 3
    alpha: float = 2.0
    threshold: float = 1e-14
    bond0: float = 2.0
    grid: GridSpec = field(default_factory=GridSpec)
    output: Path = Path(".")
    format: str = "csv"
    trace: bool = False
    allow_no_fixed_point: bool = False
    literal_ltilde: bool = False
    n_values: tuple = (8, 16, 32, 64, 128, 256)
    n_ref: int = 2000
    bonds: tuple = (0.1, 1.0, 10.0)

    @property
    def mode(self):
        return None if self.geometry is Geometry.STRIP else self.m

    def resolved_n(self) -> int:
        if self.n is not None:
            return self.n
        if self.command is Command.BONDSTAR or self.geometry is Geometry.HOLE:
            return 80
        return 400 if self.command is Command.SWEEP else 200


def parse_bond(s, flag="--bond") -> float:
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        v = float(s)
    elif s == "inf":
        return math.inf
    else:
        try:
            v = float(s)
        except (TypeError, ValueError):
            raise UsageError(f"{flag}: expected a positive number or 'inf', got {s!r}") from None
        if not math.isfinite(v):
            raise UsageError(f"{flag}: use the literal 'inf' for an infinite Bond number")
    if not v > 0:
        raise UsageError(f"{flag}: Bond number must be positive, got {s!r}")
    return v


def _int_list(s, flag):
    try:
        vals = [int(t) for t in (s.split(",") if isinstance(s, str) else s)]
    except (TypeError, ValueError):
        raise UsageError(f"{flag}: expected a comma-separated list of integers") from None
    return tuple(vals)


def _bond_list(s, flag):
    toks = s.split(",") if isinstance(s, str) else list(s)
    return tuple(parse_bond(t.strip() if isinstance(t, str) else t, flag) for t in toks)


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message.splitlines()[0])


_DEFAULTS = {f.name: f.default for f in RunConfig.__dataclass_fields__.values()
             if not callable(f.default_factory)}
_DEFAULTS.update(grid_min=1.0, grid_max=1000.0, grid_points=32, grid_scale="log")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="icefish", description="Surface-tension sloshing eigenproblems.")
    p.add_argument("command", choices=[c.value for c in Command])
    p.add_argument("--config", help="JSON file whose keys mirror the long flags")
    p.add_argument("--geometry", choices=[g.value for g in Geometry])
    p.add_argument("--m", type=int)
    p.add_argument("--bond", help="Bond number, or the literal 'inf'")
    p.add_argument("--n", type=int, help="polynomial degree")
    p.add_argument("--count", type=int, help="number of eigenpairs")
    p.add_argument("--alpha", type=float, help="slope of the relaxed fixed-point map")
    p.add_argument("--threshold", type=float)
    p.add_argument("--bond0", type=float, help="starting Bond number for the iteration")
    p.add_argument("--grid-min", type=float)
    p.add_argument("--grid-max", type=float)
    p.add_argument("--grid-points", type=int)
    p.add_argument("--grid-scale", choices=["log", "linear"])
    p.add_argument("--n-values", help="comma-separated degrees for converge")
    p.add_argument("--n-ref", type=int, help="reference degree for converge")
    p.add_argument("--bonds", help="comma-separated Bond numbers for converge/energy")
    p.add_argument("--output", "-o", help="output directory")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--trace", action="store_true", default=None)
    p.add_argument("--allow-no-fixed-point", action="store_true", default=None)
    p.add_argument("--literal-ltilde", action="store_true", default=None,
                   help="validate the hole kernel with the (j-1)^2 index variant")
    return p


def _load_config(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--config: cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("--config: expected a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def config_from_args(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    conf = _load_config(ns.pop("config")) if ns.get("config") else {}
    known = set(ns) | {"command"}
    for k in conf:
        if k not in known:
            raise UsageError(f"--config: unknown key {k!r}")
    merged = {}
    for k in ns:
        v = ns[k]
        merged[k] = v if v is not None else conf.get(k, _DEFAULTS.get(k))
    return make_config(merged)


def make_config(d: dict) -> RunConfig:
    """Validate a flat dict of flag values into a RunConfig."""
    g = lambda k: d.get(k, _DEFAULTS.get(k))  # noqa: E731
    command = Command(d["command"])
    try:
        geometry = Geometry(g("geometry"))
    except ValueError:
        raise UsageError(f"--geometry: expected 'strip' or 'hole', got {g('geometry')!r}") from None
    m = g("m")
    if geometry is Geometry.HOLE or command is Command.BONDSTAR:
        if m is None:
            m = 1
        if not isinstance(m, int) or m < 0:
            raise UsageError(f"--m: expected a non-negative integer, got {m!r}")
    if command is Command.BONDSTAR:
        geometry = Geometry.HOLE
        if m < 1:
            raise UsageError("--m: the critical Bond number needs m >= 1")
        if m >= 6 and not g("allow_no_fixed_point"):
            raise UsageError(f"--m: no fixed point exists for m = {m}; "
                             "pass --allow-no-fixed-point to attempt it anyway")
    bond = parse_bond(g("bond"))
    n = g("n")
    if n is not None and (not isinstance(n, int) or n < (3 if geometry is Geometry.STRIP else 2)):
        raise UsageError(f"--n: degree too small for the {geometry.value} basis, got {n!r}")
    count = g("count")
    if not isinstance(count, int) or count < 1:
        raise UsageError(f"--count: expected a positive integer, got {count!r}")
    alpha = float(g("alpha"))
    if not alpha > 1:
        raise UsageError(f"--alpha: need alpha > 1, got {alpha}")
    threshold = float(g("threshold"))
    if not threshold > 0:
        raise UsageError(f"--threshold: must be positive, got {threshold}")
    bond0 = float(g("bond0"))
    if not bond0 > 1:
        raise UsageError(f"--bond0: must exceed 1, got {bond0}")

    gmin, gmax, gpts = float(g("grid_min")), float(g("grid_max")), g("grid_points")
    scale = g("grid_scale")
    if not isinstance(gpts, int) or gpts < 1:
        raise UsageError(f"--grid-points: expected a positive integer, got {gpts!r}")
    if not (gmin > 0 and math.isfinite(gmax) and gmax >= gmin):
        raise UsageError(f"--grid-min/--grid-max: need 0 < min <= max < inf, got {gmin}, {gmax}")
    if scale not in ("log", "linear"):
        raise UsageError(f"--grid-scale: expected 'log' or 'linear', got {scale!r}")
    grid = GridSpec(gmin, gmax, gpts, scale)

    n_values = _int_list(g("n_values"), "--n-values")
    n_ref = g("n_ref")
    if command is Command.CONVERGE:
        if not n_values or min(n_values) < 3 or not isinstance(n_ref, int) or n_ref < max(n_values):
            raise UsageError("--n-ref: reference degree must be >= every study degree (all >= 3)")
    bonds = _bond_list(g("bonds"), "--bonds")
    fmt = g("format")
    if fmt not in ("csv", "json"):
        raise UsageError(f"--format: expected 'csv' or 'json', got {fmt!r}")
    return RunConfig(command, geometry, m if geometry is Geometry.HOLE else None, bond, n, count,
                     alpha, threshold, bond0, grid, Path(g("output")), fmt,
                     bool(g("trace")), bool(g("allow_no_fixed_point")), bool(g("literal_ltilde")),
                     n_values, n_ref, bonds)


# ---------------------------------------------------------------------------
# commands

def _sidecar(cfg: RunConfig, files: list[Path]):
    meta = asdict(cfg)
    meta = json.loads(json.dumps(meta, default=str))
    meta["files"] = sorted(p.name for p in files)
    meta["python"] = platform.python_version()
    meta["numpy"] = np.__version__
    path = cfg.output / f"{cfg.command.value}.meta.json"
    path.write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")
    return path


def cmd_solve(cfg: RunConfig) -> list[Path]:
    n = cfg.resolved_n()
    system = analysis.get_system(cfg.geometry.value, cfg.mode, n)
    if cfg.count > system.dim:
        raise UsageError(f"--count: at most {system.dim} eigenpairs at n = {n}")
    sol = solve_gevp(system, cfg.bond, cfg.count)
    m = cfg.m if cfg.m is not None else 0
    rows = [dict(geometry=cfg.geometry.value, m=m, bond=cfg.bond, n=n, j=j + 1, lambda_=float(lam))
            for j, lam in enumerate(sol.lambdas)]
    for r in rows:
        r["lambda"] = r.pop("lambda_")
    files = [write_table(cfg.output / "eigenvalues", ["geometry", "m", "bond", "n", "j", "lambda"],
                         rows, cfg.format)]
    lo = -1.0 if cfg.geometry is Geometry.STRIP else 0.0
    x = np.linspace(lo, 1.0, PROFILE_POINTS)
    for j in range(1, cfg.count + 1):
        prof = analysis.profile_from_solution(sol, j)
        vals = [prof(x, d) for d in range(3)]
        prows = [dict(r=float(x[k]), xi=float(vals[0][k]), dxi=float(vals[1][k]),
                      d2xi=float(vals[2][k])) for k in range(len(x))]
        files.append(write_table(cfg.output / f"profile_{j}", ["r", "xi", "dxi", "d2xi"],
                                 prows, cfg.format))
    return files


def cmd_sweep(cfg: RunConfig) -> list[Path]:
    recs = analysis.sweep(cfg.geometry.value, cfg.grid.values(), cfg.mode, cfg.resolved_n())
    header = ["bond", "lambda1", "high_spot", "on_boundary"]
    if cfg.geometry is Geometry.HOLE:
        header.append("first_interior_zero")
    rows = sorted((asdict(r) for r in recs), key=lambda r: r["bond"])
    return [write_table(cfg.output / "sweep", header, rows, cfg.format)]


def cmd_bondstar(cfg: RunConfig) -> list[Path]:
    n = cfg.resolved_n()
    res = analysis.bond_star_hole(cfg.m, cfg.alpha, n, cfg.threshold, cfg.bond0)
    row = dict(m=res.m, alpha=res.alpha, n=res.n, threshold=res.threshold,
               bond_star=res.bond_star, iterations=res.iterations)
    files = [write_table(cfg.output / "bondstar", list(row), [row], cfg.format)]
    if cfg.trace:
        trows = [dict(iteration=k, x=float(x), bond=1.0 / x) for k, x in enumerate(res.trace)]
        files.append(write_table(cfg.output / "bondstar_trace", ["iteration", "x", "bond"],
                                 trows, cfg.format))
    return files


def converge_rows(geometry: str, m, bonds, n_values, n_ref) -> list[dict]:
    """Relative eigenvalue and profile errors for j = 1, 2 against degree ``n_ref``."""
    rows = []
    for bo in bonds:
        ref = solve_gevp(analysis.get_system(geometry, m, n_ref), bo, 2)
        refp = [analysis.profile_from_solution(ref, j) for j in (1, 2)]
        for n in n_values:
            sol = solve_gevp(analysis.get_system(geometry, m, n), bo, 2) if n != n_ref else ref
            for j in (1, 2):
                lam, lref = float(sol.lambdas[j - 1]), float(ref.lambdas[j - 1])
                perr = analysis.profile_error(analysis.profile_from_solution(sol, j), refp[j - 1])
                rows.append(dict(geometry=geometry, m=m if m is not None else 0, bond=bo, n=n, j=j,
                                 lambda_n=lam, lambda_ref=lref,
                                 lambda_err=abs(lam - lref) / lref, profile_err=perr))
    return rows


def cmd_converge(cfg: RunConfig) -> list[Path]:
    rows = converge_rows(cfg.geometry.value, cfg.mode, cfg.bonds, cfg.n_values, cfg.n_ref)
    header = ["geometry", "m", "bond", "n", "j", "lambda_n", "lambda_ref", "lambda_err",
              "profile_err"]
    return [write_table(cfg.output / "converge", header, rows, cfg.format)]


class ValidationFailure(Exception):
    pass


def cmd_validate(cfg: RunConfig) -> list[Path]:
    from .validation import run_validation

    reports = run_validation(literal=cfg.literal_ltilde)
    header = ["geometry", "m", "i", "j", "quantity", "closed_form", "oracle", "abs_err",
              "tail_bound"]
    rows = [dict(geometry=r.geometry, m=r.m, i=r.i, j=r.j, quantity=r.quantity,
                 closed_form=r.closed_form, oracle=r.oracle, abs_err=r.abs_err,
                 tail_bound=r.tail_bound) for r in reports]
    files = [write_table(cfg.output / "validate", header, rows, cfg.format)]
    bad = [r for r in reports if not r.passed]
    if bad:
        kinds = sorted({f"{r.geometry}/{r.quantity}" for r in bad})
        raise ValidationFailure(f"{len(bad)} of {len(reports)} oracle checks failed: "
                                + ", ".join(kinds), files)
    return files


def energy_rows(geometry: str, m, n: int, bonds) -> list[dict]:
    rows = []
    for bo in bonds:
        lam, prof = analysis.fundamental(geometry, m, n, bo)
        grav, tens = analysis.energy_split(prof)
        rows.append(dict(geometry=geometry, m=m if m is not None else 0, bond=bo, n=n,
                         lambda1=lam, gravity=grav, tension=tens))
    return rows


def cmd_energy(cfg: RunConfig) -> list[Path]:
    """Split of lambda_1 = gravity + tension/Bo at each Bond number."""
    rows = energy_rows(cfg.geometry.value, cfg.mode, cfg.resolved_n(), cfg.bonds)
    header = ["geometry", "m", "bond", "n", "lambda1", "gravity", "tension"]
    return [write_table(cfg.output / "energy", header, rows, cfg.format)]


COMMANDS = {
    Command.SOLVE: cmd_solve,
    Command.SWEEP: cmd_sweep,
    Command.BONDSTAR: cmd_bondstar,
    Command.CONVERGE: cmd_converge,
    Command.VALIDATE: cmd_validate,
    Command.ENERGY: cmd_energy,
}


def run(cfg: RunConfig) -> list[Path]:
    cfg.output.mkdir(parents=True, exist_ok=True)
    files = COMMANDS[cfg.command](cfg)
    _sidecar(cfg, files)
    return files


def main(argv=None) -> int:
    prog = "icefish"
    try:
        cfg = config_from_args(argv)
        files = run(cfg)
    except UsageError as exc:
        print(f"{prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationFailure as exc:
        msg, files = exc.args
        _sidecar(cfg, files)
        print(f"{prog}: validation failed: {msg}", file=sys.stderr)
        return EXIT_VALIDATION
    except NoFixedPointError as exc:
        print(f"{prog}: no fixed point: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"{prog}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"{prog}: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for f in files:
        print(f)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
