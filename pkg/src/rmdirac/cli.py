"""Command-line front end: spectrum tables, wavefunction samples, Pekeris reports, validation.

Configuration comes from an optional flat ``key = value`` file and is
overridden by command-line flags. Exit codes: 0 success, 1 validation
failure, 2 configuration error, 3 requested state not found.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import oracle, spectra, validation, wavefun
from .model import PhysicalContext, PotentialParams, QuantumNumbers, Symmetry
from .pekeris import contact_residuals, matched_coeffs, max_deviation, published_coeffs

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NOT_FOUND = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    mc2: float = 5.0
    hbarc: float = 1.0
    v1: float = 3.0
    v2: float = 1.0
    alpha: float = 0.5
    r_e: float | None = None  # defaults to 1/alpha
    sym_const: float = 0.0
    branch: str = "spin"
    kappa: tuple = (-1,)
    n: tuple = (0,)
    centrifugal: str = "pekeris"
    validate: bool = False
    format: str = "csv"
    out: str | None = None
    emin: float | None = None
    emax: float | None = None
    grid_points: int = 2000
    r_min: float | None = None
    r_max: float | None = None
    samples: int = 2000
    root: int = 0
    corrupt_delta: float = 0.0

    def params(self) -> PotentialParams:
        return PotentialParams(self.v1, self.v2, self.alpha, self.r_e if self.r_e is not None else 1.0 / self.alpha)

    def symmetry(self) -> Symmetry:
        return Symmetry.SPIN if self.branch == "spin" else Symmetry.PSEUDOSPIN

    def context(self) -> PhysicalContext:
        return PhysicalContext(self.mc2, self.hbarc, self.symmetry(), self.sym_const)

    def window(self) -> spectra.SearchWindow | None:
        if self.emin is None and self.emax is None:
            return None
        lo = self.emin if self.emin is not None else -self.mc2
        hi = self.emax if self.emax is not None else self.mc2 + abs(self.v2)
        return spectra.SearchWindow(lo, hi, self.grid_points)


def _int_list(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    out = []
    for part in str(text).replace(" ", "").split(","):
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..")
            lo, hi = int(a), int(b)
            step = 1 if hi >= lo else -1
            out.extend(range(lo, hi + step, step))
        else:
            out.append(int(part))
    return tuple(out)


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_OPTIONAL_FLOAT = lambda v: None if str(v).strip().lower() in ("", "none") else float(v)  # noqa: E731

_CONVERTERS = {
    "mc2": float, "hbarc": float, "v1": float, "v2": float, "alpha": float,
    "r_e": _OPTIONAL_FLOAT, "sym_const": float, "branch": str, "kappa": _int_list, "n": _int_list,
    "centrifugal": str, "validate": _bool, "format": str, "out": str,
    "emin": _OPTIONAL_FLOAT, "emax": _OPTIONAL_FLOAT, "grid_points": int,
    "r_min": _OPTIONAL_FLOAT, "r_max": _OPTIONAL_FLOAT, "samples": int, "root": int,
    "corrupt_delta": float,
}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment. Unknown keys raise ConfigError."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERTERS:
            raise ConfigError(f"{path}:{lineno}: unknown config key '{key}'")
        values[key] = value
    return values


def build_config(file_values: dict, flag_values: dict) -> RunConfig:
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    kwargs = {}
    for key, value in merged.items():
        try:
            kwargs[key] = _CONVERTERS[key](value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for '{key}': {value!r} ({exc})") from exc
    cfg = RunConfig(**kwargs)
    _check(cfg)
    return cfg


def _check(cfg: RunConfig):
    if cfg.branch not in ("spin", "pseudospin"):
        raise ConfigError(f"branch must be spin or pseudospin, got '{cfg.branch}'")
    if cfg.centrifugal not in ("exact", "pekeris"):
        raise ConfigError(f"centrifugal must be exact or pekeris, got '{cfg.centrifugal}'")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got '{cfg.format}'")
    if cfg.samples < 2:
        raise ConfigError("samples must be at least 2")
    try:
        cfg.params()
        cfg.context()
        cfg.window()
        for k in cfg.kappa:
            for n in cfg.n:
                QuantumNumbers(n, k)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if not cfg.kappa or not cfg.n:
        raise ConfigError("kappa and n lists must not be empty")


def _branch(cfg: RunConfig) -> spectra.Branch:
    return spectra.Branch.SPIN_GENERAL if cfg.branch == "spin" else spectra.Branch.PSEUDOSPIN


def _spec(cfg: RunConfig, n: int, kappa: int) -> spectra.EnergyResidualSpec:
    return spectra.EnergyResidualSpec(_branch(cfg), cfg.params(), cfg.context(), QuantumNumbers(n, kappa))


def _clean(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return None if not math.isfinite(v) else v
    if isinstance(v, np.integer):
        return int(v)
    return v


def render(records: list[dict], columns: list[str], fmt: str, metadata: dict | None = None) -> str:
    """CSV with 17 significant digits, or JSON carrying the same values."""
    if fmt == "json":
        doc = {"metadata": metadata or {}, "records": [{c: _clean(r.get(c)) for c in columns} for r in records]}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        row = []
        for c in columns:
            v = r.get(c)
            if isinstance(v, (float, np.floating)):
                row.append("%.16e" % float(v))
            elif v is None:
                row.append("")
            else:
                row.append(str(v))
        w.writerow(row)
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _metadata(command: str, cfg: RunConfig) -> dict:
    return {"command": command, "config": {k: _clean(v) if not isinstance(v, tuple) else list(v)
                                           for k, v in dataclasses.asdict(cfg).items()}}


SPECTRUM_COLUMNS = ["n", "kappa", "l", "branch", "energy", "epsilon", "delta", "residual",
                    "nu_residual", "oracle_energy", "oracle_rel_gap", "confirmed"]


def _spectrum_rows(cfg: RunConfig, n: int, kappa: int) -> list[dict]:
    spec = _spec(cfg, n, kappa)
    states = spectra.solve_bound_states(spec, cfg.window())
    qn = spec.qn
    found = []
    if cfg.validate and states:
        mode = oracle.Centrifugal(cfg.centrifugal)
        found = oracle.self_consistent_energies(n, spec.params, spec.context, qn, mode, coeffs=spec.coeffs)
    rows = []
    for st in states:
        row = {
            "n": n, "kappa": kappa, "l": qn.l if spec.branch.symmetry is Symmetry.SPIN else qn.l_tilde,
            "branch": spec.branch.value, "energy": st.energy, "epsilon": st.epsilon, "delta": st.delta,
            "residual": st.residual, "nu_residual": st.nu_residual,
        }
        if cfg.validate:
            tol = 1e-6 if qn.centrifugal_strength(spec.branch.symmetry) == 0 else 1e-5
            if found:
                best = min(found, key=lambda r: abs(r.energy - st.energy))
                gap = abs(st.energy - best.energy) / abs(best.energy)
                row.update(oracle_energy=float(best.energy), oracle_rel_gap=gap, confirmed=int(gap <= tol))
            else:
                row.update(oracle_energy=math.nan, oracle_rel_gap=math.nan, confirmed=0)
        rows.append(row)
    return rows


def cmd_spectrum(cfg: RunConfig) -> int:
    pairs = [(k, n) for k in cfg.kappa for n in cfg.n]
    with ThreadPoolExecutor() as pool:
        chunks = list(pool.map(lambda kn: ((kn[0], kn[1]), _spectrum_rows(cfg, kn[1], kn[0])), pairs))
    records = [row for _, rows in sorted(chunks, key=lambda t: t[0]) for row in rows]
    columns = SPECTRUM_COLUMNS if cfg.validate else SPECTRUM_COLUMNS[:9]
    _emit(render(records, columns, cfg.format, _metadata("spectrum", cfg)), cfg)
    if cfg.validate and any(not r["confirmed"] for r in records):
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig) -> int:
    n, kappa = cfg.n[0], cfg.kappa[0]
    spec = _spec(cfg, n, kappa)
    states = spectra.solve_bound_states(spec, cfg.window())
    if cfg.root >= len(states):
        sys.stderr.write(f"no bound state #{cfg.root} for n={n}, kappa={kappa} ({len(states)} found)\n")
        return EXIT_NOT_FOUND
    sol = wavefun.with_norm(wavefun.SpinorSolution.from_spec(spec, states[cfg.root]))
    a = sol.params.alpha
    r_min = cfg.r_min if cfg.r_min is not None else 1e-6 / a
    r_max = cfg.r_max if cfg.r_max is not None else wavefun.tail_cutoff(sol)
    if not 0 < r_min < r_max:
        sys.stderr.write(f"invalid sampling range [{r_min}, {r_max}]\n")
        return EXIT_CONFIG
    r = np.linspace(r_min, r_max, cfg.samples)
    if sol.symmetry is Symmetry.SPIN:
        f, g = wavefun.upper_spinor_f(r, sol), wavefun.lower_spinor_g_from_f(r, sol)
    else:
        pair = wavefun.pseudospin_pair(r, sol)
        f, g = pair["f"], pair["g"]
    records = [{"r": float(ri), "F": float(fi), "G": float(gi)} for ri, fi, gi in zip(r, f, g)]
    meta = _metadata("wavefunction", cfg)
    meta["state"] = {"energy": sol.state.energy, "epsilon": sol.state.epsilon, "delta": sol.state.delta,
                     "norm": sol.state.norm}
    _emit(render(records, ["r", "F", "G"], cfg.format, meta), cfg)
    return EXIT_OK


PEKERIS_COLUMNS = ["source", "alpha", "r_e", "d0", "d1", "d2", "contact_value", "contact_slope",
                   "contact_curvature", "max_deviation"]


def cmd_pekeris(cfg: RunConfig) -> int:
    p = cfg.params()
    records = []
    for make in (published_coeffs, matched_coeffs):
        try:
            c = make(p.alpha, p.r_e)
        except OverflowError as exc:
            sys.stderr.write(f"{make.__name__}: {exc}\n")
            continue
        res = contact_residuals(c, p.alpha, p.r_e)
        records.append({
            "source": c.source.value, "alpha": p.alpha, "r_e": p.r_e, "d0": c.d0, "d1": c.d1, "d2": c.d2,
            "contact_value": res[0], "contact_slope": res[1], "contact_curvature": res[2],
            "max_deviation": max_deviation(c, p.alpha, p.r_e),
        })
    _emit(render(records, PEKERIS_COLUMNS, cfg.format, _metadata("pekeris", cfg)), cfg)
    return EXIT_OK


VALIDATE_COLUMNS = ["criterion", "title", "passed", "measured", "notes"]


def cmd_validate(cfg: RunConfig) -> int:
    vcfg = validation.ValidationConfig(
        mc2=cfg.mc2, hbarc=cfg.hbarc, v1=cfg.v1, v2=cfg.v2, alpha=cfg.alpha,
        r_e=cfg.r_e if cfg.r_e is not None else 1.0 / cfg.alpha, corrupt_delta=cfg.corrupt_delta,
    )
    results = validation.run_all(vcfg)
    for res in results:
        sys.stderr.write(res.line() + "\n")
    info = validation.informational(vcfg)
    for line in info:
        sys.stderr.write(f"[INFO] {line}\n")
    records = [{
        "criterion": r.number, "title": r.title, "passed": int(r.passed),
        "measured": json.dumps({k: _clean(v) for k, v in r.measured.items()}, sort_keys=True),
        "notes": " | ".join(r.notes),
    } for r in results]
    meta = _metadata("validate", cfg)
    meta["informational"] = info
    _emit(render(records, VALIDATE_COLUMNS, cfg.format, meta), cfg)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


COMMANDS = {"spectrum": cmd_spectrum, "wavefunction": cmd_wavefunction, "pekeris": cmd_pekeris,
            "validate": cmd_validate}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags override it")
    g = common.add_argument_group("physics")
    g.add_argument("--mc2", help="rest energy Mc^2")
    g.add_argument("--hbarc", help="hbar*c in the caller's units")
    g.add_argument("--v1", help="well depth V1")
    g.add_argument("--v2", help="asymptotic shift V2")
    g.add_argument("--alpha", help="inverse range alpha")
    g.add_argument("--r-e", dest="r_e", help="reference radius of the centrifugal approximation (default 1/alpha)")
    g.add_argument("--sym-const", dest="sym_const", help="C_s (spin) or C_ps (pseudospin)")
    g.add_argument("--branch", help="spin | pseudospin")
    g.add_argument("--kappa", help="comma list or range, e.g. -3..-1,2")
    g.add_argument("--n", help="comma list or range of radial quantum numbers")
    g.add_argument("--centrifugal", help="exact | pekeris (oracle mode for --validate)")
    s = common.add_argument_group("search and output")
    s.add_argument("--validate", action="store_const", const=True, default=None,
                   help="compare every root with the finite-difference oracle")
    s.add_argument("--format", help="csv | json")
    s.add_argument("--out", help="output path (stdout if omitted)")
    s.add_argument("--emin", help="lower end of the energy search window")
    s.add_argument("--emax", help="upper end of the energy search window")
    s.add_argument("--grid-points", dest="grid_points", help="energy scan points (>= 100)")

    parser = _Parser(prog="rmdirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="bound-state energies per (kappa, n)")
    wf = sub.add_parser("wavefunction", parents=[common], help="sample normalized F and G")
    wf.add_argument("--r-min", dest="r_min")
    wf.add_argument("--r-max", dest="r_max")
    wf.add_argument("--samples")
    wf.add_argument("--root", help="index of the root when several states share (n, kappa)")
    sub.add_parser("pekeris", parents=[common], help="centrifugal-approximation coefficient report")
    val = sub.add_parser("validate", parents=[common], help="run the acceptance criteria")
    val.add_argument("--corrupt-delta", dest="corrupt_delta", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = build_config(file_values, flags)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    return COMMANDS[args.command](cfg)


if __name__ == "__main__":
    raise SystemExit(main())
