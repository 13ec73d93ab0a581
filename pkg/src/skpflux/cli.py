"""Command-line driver: energies, table reproduction, sweeps, thermodynamics, verification.

Exit codes: 0 success, 1 verification failure, 2 config error, 3 domain error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import oracle, tables, thermo
from .model import (
    NATURAL,
    Constants,
    DomainError,
    FieldConfig,
    PotentialParams,
    QuantumState,
    cutoffs,
    energy_2d,
    energy_3d,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3
SWEEP_VARS = ("B", "phi", "beta", "alpha", "n", "m")
Z_METHODS = {"sum": "sum", "quad": "quad", "closed": "closed", "all": "all"}
FLOAT_FMT = ".11e"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Sweep:
    var: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.var not in SWEEP_VARS:
            raise ConfigError(f"sweep variable must be one of {SWEEP_VARS}, got {self.var!r}")
        if self.steps < 2:
            raise ConfigError("sweep steps must be >= 2")
        if not self.lo < self.hi:
            raise ConfigError("sweep needs lo < hi")

    def values(self):
        v = np.linspace(self.lo, self.hi, self.steps)
        if self.var in ("n", "m"):
            iv = np.rint(v)
            if np.any(np.abs(v - iv) > 1e-9):
                raise ConfigError(f"sweep over {self.var} must land on integers")
            return [int(x) for x in iv]
        return [float(x) for x in v]

    @classmethod
    def parse(cls, text: str) -> "Sweep":
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigError(f"--sweep expects var:lo:hi:steps, got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ConfigError(f"bad --sweep {text!r}: {exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialParams = PotentialParams()
    fields: Optional[FieldConfig] = None
    constants: Constants = NATURAL
    sweep: Optional[Sweep] = None
    z_method: str = "sum"
    convention: str = "standard"
    output_path: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    ell: Optional[int] = None
    beta: Optional[float] = None
    table: int = 1
    perturb: float = 0.0


# --- config parsing ----------------------------------------------------------

_KEYS = {
    "alpha": float,
    "A": float,
    "C": float,
    "De": float,
    "re": float,
    "B": float,
    "phi": float,
    "n": int,
    "m": int,
    "ell": int,
    "beta": float,
    "sweep": str,
    "z-method": str,
    "convention": str,
    "table": int,
    "out": str,
}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-")
        if key not in _KEYS:
            raise ConfigError(f"{path}:{no}: unknown key {key!r}")
        try:
            out[key] = _KEYS[key](val)
        except ValueError as exc:
            raise ConfigError(f"{path}:{no}: bad value for {key}: {val!r}") from exc
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    values = read_config_file(args.config) if args.config else {}
    for key in _KEYS:
        v = getattr(args, key.replace("-", "_"), None)
        if v is not None:
            values[key] = v

    alpha = values.get("alpha", 0.005)
    if "De" in values or "re" in values:
        if "De" not in values or "re" not in values:
            raise ConfigError("--De and --re must be given together")
        if "A" in values or "C" in values:
            raise ConfigError("give either --A/--C or --De/--re, not both")
        make = lambda: PotentialParams.from_molecule(values["De"], values["re"], alpha)
    else:
        make = lambda: PotentialParams(A=values.get("A", 1.0), C=values.get("C", 0.5), alpha=alpha)
    try:
        potential = make()
        fields = None
        if "B" in values or "phi" in values:
            fields = FieldConfig(B=values.get("B", 0.0), phi_AB=values.get("phi", 0.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    z_method = values.get("z-method", "sum")
    if z_method not in Z_METHODS:
        raise ConfigError(f"--z-method must be one of {sorted(Z_METHODS)}")
    convention = values.get("convention", "standard")
    if convention not in ("standard", "paper"):
        raise ConfigError("--convention must be standard or paper")
    table = values.get("table", 1)
    if table not in (1, 2):
        raise ConfigError("--table must be 1 or 2")
    beta = values.get("beta")
    if beta is not None and not beta > 0:
        raise ConfigError("--beta must be > 0")
    n = values.get("n")
    if n is not None and n < 0:
        raise ConfigError("--n must be >= 0")
    return RunConfig(
        potential=potential,
        fields=fields,
        sweep=Sweep.parse(values["sweep"]) if "sweep" in values else None,
        z_method=z_method,
        convention=convention,
        output_path=values.get("out"),
        n=n,
        m=values.get("m"),
        ell=values.get("ell"),
        beta=beta,
        table=table,
        perturb=getattr(args, "perturb", 0.0) or 0.0,
    )


# --- output ------------------------------------------------------------------


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), FLOAT_FMT)
    return "" if v is None else str(v)


def write_csv(header, rows, path=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads() -> int:
    raw = os.environ.get("SKP_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"SKP_THREADS must be an integer, got {raw!r}")


def ordered_map(fn, items):
    """Map in parallel when SKP_THREADS > 1; results keep input order."""
    items = list(items)
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


# --- commands ----------------------------------------------------------------


def _point(cfg: RunConfig, var=None, value=None):
    """Resolve (potential, fields, n, m, beta) for one sweep point."""
    p = cfg.potential
    f = cfg.fields or FieldConfig()
    n = 0 if cfg.n is None else cfg.n
    m = 0 if cfg.m is None else cfg.m
    beta = cfg.beta
    if var == "B":
        f = FieldConfig(B=value, phi_AB=f.phi_AB)
    elif var == "phi":
        f = FieldConfig(B=f.B, phi_AB=value)
    elif var == "alpha":
        p = PotentialParams(A=p.A, C=p.C, alpha=value)
    elif var == "n":
        n = value
    elif var == "m":
        m = value
    elif var == "beta":
        beta = value
    return p, f, n, m, beta


def _energy_row(p, f, n, m, k):
    E = energy_2d(p, f, QuantumState(n, m), k)
    n_max = cutoffs(p, f, m, k).n_max
    return [n, m, f.B, f.phi_AB, p.alpha, E, n_max, n > n_max]


ENERGY_HEADER = ["n", "m", "B", "phi", "alpha", "E", "n_max", "beyond_cutoff"]


def cmd_energy(cfg: RunConfig):
    k = cfg.constants
    if cfg.ell is not None:
        if cfg.fields and (cfg.fields.B or cfg.fields.phi_AB):
            raise DomainError("--ell (3D) is defined at zero fields only")
        ns = [cfg.n] if cfg.n is not None else range(4)
        rows = [[n, cfg.ell, cfg.potential.alpha, energy_3d(cfg.potential, cfg.ell, n, k)] for n in ns]
        return ["n", "ell", "alpha", "E"], rows

    if cfg.sweep is not None:
        if cfg.sweep.var == "beta":
            raise ConfigError("energy does not depend on beta")
        jobs = [_point(cfg, cfg.sweep.var, v) for v in cfg.sweep.values()]
        return ENERGY_HEADER, ordered_map(lambda j: _energy_row(j[0], j[1], j[2], j[3], k), jobs)

    ns = [cfg.n] if cfg.n is not None else list(range(4))
    ms = [cfg.m] if cfg.m is not None else [0, 1, -1]
    if cfg.fields is not None:
        cols = [cfg.fields]
    else:
        cols = [FieldConfig(B, phi) for B, phi in tables.COLUMNS]
    jobs = [(f, n, m) for m in ms for n in ns for f in cols]
    return ENERGY_HEADER, ordered_map(lambda j: _energy_row(cfg.potential, j[0], j[1], j[2], k), jobs)


def cmd_table(cfg: RunConfig):
    which = cfg.table
    p = PotentialParams(A=1.0, C=0.5, alpha=tables.ALPHAS[which])
    labels = ["00", "B", "Phi", "BPhi"]
    header = ["m", "n"]
    header += [f"E_{s}" for s in labels]
    header += [f"paper_{s}" for s in labels]
    header += [f"absdiff_{s}" for s in labels]
    rows = []
    for m, n, printed in tables.TABLES[which]:
        Es = [
            energy_2d(p, FieldConfig(B, phi), QuantumState(n, m), cfg.constants)
            for B, phi in tables.COLUMNS
        ]
        paper = [float(s) for s in printed]
        rows.append([m, n, *Es, *paper, *(abs(a - b) for a, b in zip(Es, paper))])
    return header, rows


def _z_values(p, f, m, k, beta, method):
    methods = ("sum", "quad", "closed") if method == "all" else (method,)
    out, notes = [], []
    for meth in methods:
        try:
            out.append(thermo.partition(p, f, m, k, beta, meth))
        except (DomainError, thermo.ClosedFormUnstable) as exc:
            if method != "all":
                raise
            out.append(math.nan)
            notes.append(f"{meth}: {exc}")
    return out, "; ".join(notes)


def cmd_sweep(cfg: RunConfig):
    if cfg.sweep is None:
        raise ConfigError("sweep needs --sweep var:lo:hi:steps")
    k = cfg.constants
    with_z = cfg.beta is not None or cfg.sweep.var == "beta"
    zcols = ["Z_sum", "Z_quad", "Z_closed"] if cfg.z_method == "all" else [f"Z_{cfg.z_method}"]
    header = [cfg.sweep.var, "n", "m", "B", "phi", "alpha", "E", "M0", "chi0"]
    if with_z:
        header += ["beta", *zcols, "note"]

    def row(v):
        p, f, n, m, beta = _point(cfg, cfg.sweep.var, v)
        q = QuantumState(n, m)
        E = energy_2d(p, f, q, k)
        r = [v, n, m, f.B, f.phi_AB, p.alpha, E]
        r += [thermo.magnetization_zero_T(p, f, q, k), thermo.susceptibility_zero_T(p, f, q, k)]
        if with_z:
            zs, note = _z_values(p, f, m, k, beta, cfg.z_method)
            r += [beta, *zs, note]
        return r

    return header, ordered_map(row, cfg.sweep.values())


THERMO_HEADER = [
    "beta", "B", "phi", "alpha", "m", "z_method", "convention",
    "Z", "U", "Cv", "F", "S", "M", "chi", "identity_residual", "warning",
]


def cmd_thermo(cfg: RunConfig):
    k = cfg.constants
    if cfg.sweep is None and cfg.beta is None:
        raise ConfigError("thermo needs --beta or a beta sweep")
    values = cfg.sweep.values() if cfg.sweep else [None]
    methods = ("sum", "quad", "closed") if cfg.z_method == "all" else (cfg.z_method,)

    def rows_for(v):
        p, f, _, m, beta = _point(cfg, cfg.sweep.var if cfg.sweep else None, v)
        if beta is None:
            raise ConfigError("thermo needs --beta when the sweep is not over beta")
        out = []
        for meth in methods:
            warning, used = "", meth
            try:
                try:
                    t = thermo.thermo_point(p, f, m, k, beta, meth, cfg.convention)
                except thermo.ClosedFormUnstable as exc:
                    warning, used = f"closed form unstable ({exc}); used quad", "quad"
                    t = thermo.thermo_point(p, f, m, k, beta, "quad", cfg.convention)
            except DomainError as exc:
                if cfg.z_method != "all":
                    raise
                nan = math.nan
                out.append([beta, f.B, f.phi_AB, p.alpha, m, meth, cfg.convention,
                            nan, nan, nan, nan, nan, nan, nan, nan, str(exc)])
                continue
            resid = abs(t.S - t.beta * (t.U - t.F)) if cfg.convention == "standard" else math.nan
            out.append([beta, f.B, f.phi_AB, p.alpha, m, used, cfg.convention,
                        t.Z, t.U, t.Cv, t.F, t.S, t.magnetization, t.chi, resid, warning])
        return out

    rows = [r for group in ordered_map(rows_for, values) for r in group]
    for r in rows:
        if r[-1]:
            _warn(f"beta={r[0]} B={r[1]} phi={r[2]} m={r[4]}: {r[-1]}")
    return THERMO_HEADER, rows


# --- verification ------------------------------------------------------------

VERIFY_ALPHAS = (0.005, 0.01)
VERIFY_B = (0.0, 4.0)
VERIFY_PHI = (0.0, 4.0)
VERIFY_M = (0, 1, -1)
VERIFY_NMAX = 2


def _fd_tol(E):
    return max(1e-6 * abs(E), 1e-8)


def verify_report(perturb: float = 0.0, k: Constants = NATURAL):
    """Run the oracle suite; returns a list of (check, passed, detail)."""
    results = []
    worst_exact = worst_closed = 0.0
    fail_exact = fail_closed = 0
    cases = 0
    for a in VERIFY_ALPHAS:
        p = PotentialParams(alpha=a)
        for B in VERIFY_B:
            for phi in VERIFY_PHI:
                f = FieldConfig(B, phi)
                for m in VERIFY_M:
                    fd = oracle.fd_eigenvalues_extrapolated(p, f, m, k, count=VERIFY_NMAX + 1).energies
                    for n in range(VERIFY_NMAX + 1):
                        q = QuantumState(n, m)
                        closed = energy_2d(p, f, q, k) + perturb
                        try:
                            exact = oracle.ga_exact_energy(p, f, q, k) + perturb
                        except DomainError:
                            exact = None
                        cases += 1
                        if n >= len(fd):
                            # no FD bound state: the exact form must agree there is none
                            if exact is not None:
                                fail_exact += 1
                            fail_closed += 1
                            continue
                        if exact is None:
                            fail_exact += 1
                        else:
                            d = abs(exact - fd[n])
                            worst_exact = max(worst_exact, d / _fd_tol(fd[n]))
                            fail_exact += d > _fd_tol(fd[n])
                        d = abs(closed - fd[n])
                        worst_closed = max(worst_closed, d / _fd_tol(fd[n]))
                        fail_closed += d > _fd_tol(fd[n])
    results.append((
        "fd vs exact eigenvalue of the radial equation",
        fail_exact == 0,
        f"{cases} states, {fail_exact} failures, worst |dE|/tol = {worst_exact:.3g}",
    ))
    results.append((
        "fd vs closed-form spectrum",
        fail_closed == 0,
        f"{cases} states, {fail_closed} failures, max |closed-form - fd|/tol = {worst_closed:.3g}",
    ))

    bad = []
    for a in VERIFY_ALPHAS:
        p = PotentialParams(alpha=a)
        for B, phi in [(0.0, 0.0), (0.0, 4.0), (0.02, 1.0)]:
            for m in VERIFY_M:
                f = FieldConfig(B, phi)
                c = cutoffs(p, f, m, k).n_max
                b = oracle.brute_force_nmax(p, f, m, k, n_ceiling=oracle._ceiling(p, f, m, k))
                if b != c:
                    bad.append((a, B, phi, m, c, b))
    results.append(("n_max vs brute-force scan", not bad, f"mismatches: {bad}" if bad else "all agree"))

    worst_sum = worst_int = 0.0
    p = PotentialParams(alpha=0.005)
    for B, phi in [(0.0, 0.0), (0.01, 1.0), (0.03, 2.0)]:
        f = FieldConfig(B, phi)
        for beta in (1e-3, 0.1, 1.0, 10.0):
            zs = thermo.partition_direct(p, f, 0, k, beta)
            zb = oracle.brute_force_partition(p, f, 0, k, beta)
            worst_sum = max(worst_sum, abs(zs - zb) / zb)
            zq = thermo.partition_quadrature(p, f, 0, k, beta)
            zc = thermo.partition_closed(p, f, 0, k, beta)
            worst_int = max(worst_int, abs(zc - zq) / zq)
    results.append(("direct Z vs brute-force sum", worst_sum == 0.0, f"max rel diff {worst_sum:.3g}"))
    results.append(("closed-form Z vs quadrature", worst_int <= 1e-6, f"max rel diff {worst_int:.3g}"))
    return results


def cmd_verify(cfg: RunConfig):
    results = verify_report(cfg.perturb, cfg.constants)
    ok = True
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
        ok &= passed
    return ok


# --- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--alpha", type=float)
    g.add_argument("--A", type=float)
    g.add_argument("--C", type=float)
    g.add_argument("--De", type=float)
    g.add_argument("--re", type=float)
    g.add_argument("--B", type=float)
    g.add_argument("--phi", type=float)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--ell", type=int)
    g.add_argument("--beta", type=float)
    g.add_argument("--sweep", metavar="VAR:LO:HI:STEPS")
    g.add_argument("--z-method", choices=sorted(Z_METHODS))
    g.add_argument("--convention", choices=["standard", "paper"])
    g.add_argument("--table", type=int, choices=[1, 2])
    g.add_argument("--out", metavar="PATH")
    g.add_argument("--config", metavar="PATH")

    parser = argparse.ArgumentParser(
        prog="skpflux",
        description="Screened Kratzer bound states under magnetic and Aharonov-Bohm fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("energy", parents=[common], help="closed-form energies")
    sub.add_parser("table", parents=[common], help="reproduce a published eigenvalue table")
    sub.add_parser("sweep", parents=[common], help="figure data series along one axis")
    sub.add_parser("thermo", parents=[common], help="partition function and thermodynamics")
    v = sub.add_parser("verify", parents=[common], help="run the numerical oracle suite")
    v.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which is already the config-error code
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        if args.command == "verify":
            return EXIT_OK if cmd_verify(cfg) else EXIT_VERIFY
        handler = {
            "energy": cmd_energy,
            "table": cmd_table,
            "sweep": cmd_sweep,
            "thermo": cmd_thermo,
        }[args.command]
        header, rows = handler(cfg)
        write_csv(header, rows, cfg.output_path)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        _echo_params(args)
        return EXIT_DOMAIN


def _echo_params(args):
    given = {k: v for k, v in vars(args).items() if v is not None and k not in ("command",)}
    print("  parameters: " + ", ".join(f"{k}={v}" for k, v in sorted(given.items())), file=sys.stderr)


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
