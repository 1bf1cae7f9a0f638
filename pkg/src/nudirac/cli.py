"""Command-line front end.

Subcommands: ``spectrum``, ``wavefunction``, ``verify``, ``approx-error``
and ``errata``.  A problem is defined by flags or by a JSON config file
whose keys mirror the flag names in snake_case; flags win.

Exit codes: 0 success, 2 usage error, 3 empty result, 4 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import NuDiracError
from .oracle import OracleConfig, find_levels
from .potentials import BoundProblem, Hypergeometric, Morse, PoschlTeller, QuantumState, SymmetryLimit
from .spectrum import SolverConfig, solve
from .suite import SuiteEntry, validation_suite
from . import wavefunctions as wf

EXIT_OK, EXIT_USAGE, EXIT_EMPTY, EXIT_VERIFY = 0, 2, 3, 4
SUBCOMMANDS = ("spectrum", "wavefunction", "verify", "approx-error", "errata")

_PROBLEM_KEYS = ("potential", "D", "sigma", "alpha", "v1", "v2", "v0", "mass", "symmetry", "const", "kappa")
_DEFAULTS = {
    "n": [0],
    "mass": 1.0,
    "symmetry": "pseudospin",
    "const": 0.0,
    "paper_verbatim": False,
    "manning_rosen": False,
    "centrifugal": "approx",
    "output": "csv",
    "out_path": None,
    "samples": 500,
    "solver": {},
    "oracle": {},
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    problem: BoundProblem | None
    ns: list
    solver: SolverConfig
    oracle: OracleConfig
    paper_verbatim: bool = False
    centrifugal: str = "approx"
    output: str = "csv"
    out_path: str | None = None
    samples: int = 500
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------- parsing


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nudirac", description="Dirac bound states by the parametric NU method.")
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, argument_default=argparse.SUPPRESS)
        sp.add_argument("--config")
        sp.add_argument("--potential", choices=("hypergeometric", "morse", "poschl-teller"))
        sp.add_argument("--D", dest="D", type=float)
        sp.add_argument("--sigma", type=float)
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--v1", type=float)
        sp.add_argument("--v2", type=float)
        sp.add_argument("--v0", type=float)
        sp.add_argument("--mass", type=float)
        sp.add_argument("--symmetry", choices=("pseudospin", "spin"))
        sp.add_argument("--const", type=float, help="C (pseudospin) or Delta (spin)")
        sp.add_argument("--kappa", type=int)
        sp.add_argument("--n", type=int, nargs="+")
        sp.add_argument("--manning-rosen", dest="manning_rosen", action="store_true")
        sp.add_argument("--paper-verbatim", dest="paper_verbatim", action="store_true")
        sp.add_argument("--centrifugal", choices=("approx", "exact"))
        sp.add_argument("--output", choices=("csv", "jsonl"))
        sp.add_argument("--out", dest="out_path")
        sp.add_argument("--samples", type=int)
        sp.add_argument("--bracket-lo", dest="bracket_lo", type=float)
        sp.add_argument("--bracket-hi", dest="bracket_hi", type=float)
        sp.add_argument("--scan-points", dest="scan_points", type=int)
        sp.add_argument("--tol", type=float)
        sp.add_argument("--steps", type=int)
        sp.add_argument("--r-max", dest="r_max", type=float)
        sp.add_argument("--e-tol", dest="e_tol", type=float)
    return ap


def _merge(args: dict) -> dict:
    merged = {k: (dict(v) if isinstance(v, dict) else v) for k, v in _DEFAULTS.items()}
    path = args.pop("config", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(doc, dict):
            raise UsageError("config must be a JSON object")
        for k, v in doc.items():
            if k in ("solver", "oracle"):
                merged[k].update(v)
            else:
                merged[k] = v
    for k in ("bracket_lo", "bracket_hi", "scan_points", "tol"):
        if k in args:
            merged["solver"][k] = args.pop(k)
    for k in ("steps", "r_max", "e_tol"):
        if k in args:
            merged["oracle"][k] = args.pop(k)
    merged.update(args)
    if isinstance(merged["n"], int):
        merged["n"] = [merged["n"]]
    return merged


def _need(d, key, what):
    if d.get(key) is None:
        raise UsageError(f"--{key} is required for {what}")
    return float(d[key])


def _build_problem(d: dict) -> BoundProblem | None:
    if d.get("manning_rosen"):
        if d.get("potential", "hypergeometric") != "hypergeometric":
            raise UsageError("--manning-rosen applies to the hypergeometric potential only")
        if d.get("sigma") not in (None, 1, 1.0):
            raise UsageError("--manning-rosen fixes sigma = 1")
        d["potential"], d["sigma"] = "hypergeometric", 1.0
    kind = d.get("potential")
    if kind is None:
        return None
    if kind == "hypergeometric":
        pot = Hypergeometric(_need(d, "D", kind), _need(d, "sigma", kind), _need(d, "alpha", kind))
    elif kind == "morse":
        pot = Morse(_need(d, "v1", kind), _need(d, "v2", kind), _need(d, "alpha", kind))
    elif kind == "poschl-teller":
        pot = PoschlTeller(_need(d, "v0", kind), _need(d, "alpha", kind))
    else:
        raise UsageError(f"unknown potential {kind!r}")
    sym = SymmetryLimit(d["symmetry"], float(d["const"]))
    if d.get("kappa") is None:
        kappa = 0 if kind != "hypergeometric" else (1 if sym.is_pseudospin else -1)
    else:
        kappa = int(d["kappa"])
    return BoundProblem(pot, sym, float(d["mass"]), QuantumState(int(d["n"][0]), kappa))


def parse(argv) -> RunConfig:
    try:
        ns = _parser().parse_args(argv)
    except SystemExit as exc:
        if not exc.code:
            raise
        raise UsageError("") from exc
    args = vars(ns)
    sub = args.pop("subcommand")
    d = _merge(args)
    try:
        prob = _build_problem(d)
        ns_list = [int(n) for n in d["n"]]
        if any(n < 0 for n in ns_list):
            raise UsageError("n must be nonnegative")
        solver = SolverConfig(**d["solver"])
        oracle = OracleConfig(**d["oracle"])
        if int(d["samples"]) < 2:
            raise UsageError("--samples must be at least 2")
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if d["output"] not in ("csv", "jsonl"):
        raise UsageError("--output must be csv or jsonl")
    if d["centrifugal"] not in ("approx", "exact"):
        raise UsageError("--centrifugal must be approx or exact")
    return RunConfig(
        subcommand=sub,
        problem=prob,
        ns=ns_list,
        solver=solver,
        oracle=oracle,
        paper_verbatim=bool(d["paper_verbatim"]),
        centrifugal=d["centrifugal"],
        output=d["output"],
        out_path=d["out_path"],
        samples=int(d["samples"]),
    )


# ---------------------------------------------------------------- output


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "nan" if math.isnan(v) else "%.17g" % v
    return "" if v is None else str(v)


def _json_val(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(columns, rows, output: str) -> str:
    buf = io.StringIO()
    if output == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in columns])
    else:
        for row in rows:
            buf.write(json.dumps({c: _json_val(row[c]) for c in columns}) + "\n")
    return buf.getvalue()


def _emit(cfg: RunConfig, columns, rows):
    text = render(columns, rows, cfg.output)
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _workers() -> int:
    try:
        return max(0, int(os.environ.get("NU_DIRAC_THREADS", "0")))
    except ValueError:
        return 0


def _map(fn, items):
    """Ordered map, threaded when NU_DIRAC_THREADS > 0."""
    k = _workers()
    if k <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- commands

SPECTRUM_COLUMNS = ("n", "kappa", "E", "residual", "branch", "equation_id")


def run_spectrum(cfg: RunConfig):
    if cfg.problem is None:
        raise UsageError("spectrum needs a problem (--potential ...)")
    probs = [cfg.problem.with_n(n) for n in sorted(set(cfg.ns))]
    found = _map(lambda p: solve(p, cfg.solver, paper_verbatim=cfg.paper_verbatim), probs)
    rows = []
    for levels in found:
        for lv in levels:
            rows.append({"n": lv.n, "kappa": lv.kappa, "E": lv.E, "residual": lv.residual,
                         "branch": lv.branch, "equation_id": lv.equation_id})
    return SPECTRUM_COLUMNS, rows, EXIT_OK if rows else EXIT_EMPTY


def run_wavefunction(cfg: RunConfig):
    if cfg.problem is None:
        raise UsageError("wavefunction needs a problem (--potential ...)")
    prob = cfg.problem.with_n(cfg.ns[0])
    levels = solve(prob, cfg.solver, paper_verbatim=cfg.paper_verbatim)
    if not levels:
        return ("r", "value"), [], EXIT_EMPTY
    w = wf.build(prob, levels[0])
    N = cfg.samples
    rows = []
    for i in range(N):
        r = w.cutoff * (i + 1) / N
        rows.append({"r": r, "value": wf.evaluate(w, r)})
    return ("r", "value"), rows, EXIT_OK


VERIFY_COLUMNS = ("level_id", "E_analytic", "E_oracle", "rel_diff", "ode_residual", "node_check", "status")


def _verify_entry(entry: SuiteEntry, cfg: RunConfig):
    nan = float("nan")
    oracle_cfg = OracleConfig(**{**cfg.oracle.__dict__, "centrifugal_mode": "approx"})
    olevels = find_levels(entry.problem, oracle_cfg, max(entry.levels), solver_cfg=entry.solver)
    exact = None
    if cfg.centrifugal == "exact":
        ex_cfg = OracleConfig(**{**cfg.oracle.__dict__, "centrifugal_mode": "exact"})
        exact = {lv.n: lv.E for lv in find_levels(entry.problem, ex_cfg, max(entry.levels), solver_cfg=entry.solver)}
    by_n = {}
    for lv in olevels:
        by_n.setdefault(lv.n, lv.E)
    rows = []
    for prob in entry.problems():
        n = prob.state.n
        level_id = f"{entry.name}/n={n}/kappa={prob.state.kappa}"
        levels = solve(prob, entry.solver, paper_verbatim=cfg.paper_verbatim)
        E_o = by_n.get(n, nan)
        row = {"level_id": level_id, "E_analytic": nan, "E_oracle": E_o, "rel_diff": nan,
               "ode_residual": nan, "node_check": "n/a", "status": "pass"}
        if exact is not None:
            row["approx_error"] = nan
        if not levels:
            if not math.isnan(E_o):
                row["status"] = "FAIL"
            rows.append(row)
            continue
        lv = levels[0]
        row["E_analytic"] = lv.E
        ok = len(levels) == 1
        if math.isnan(E_o):
            ok = False
        else:
            row["rel_diff"] = abs(lv.E - E_o) / abs(E_o)
            ok &= row["rel_diff"] < 1e-5
        try:
            w = wf.build(prob, lv)
            row["ode_residual"] = wf.ode_residual(w, prob)
            nodes_ok = wf.node_count(w) == n
            row["node_check"] = "pass" if nodes_ok else "FAIL"
            ok &= nodes_ok and row["ode_residual"] < 1e-5
        except (NuDiracError, ValueError):
            row["node_check"] = "FAIL"
            ok = False
        if exact is not None and n in exact:
            row["approx_error"] = abs(exact[n] - lv.E) / abs(lv.E)
        row["status"] = "pass" if ok else "FAIL"
        rows.append(row)
    return rows


def run_verify(cfg: RunConfig):
    if cfg.problem is None:
        entries = validation_suite()
    else:
        p = cfg.problem
        entries = [SuiteEntry("problem", p, tuple(sorted(set(cfg.ns))), cfg.solver)]
    rows = [r for chunk in _map(lambda e: _verify_entry(e, cfg), entries) for r in chunk]
    cols = VERIFY_COLUMNS + (("approx_error",) if cfg.centrifugal == "exact" else ())
    failed = any(r["status"] != "pass" for r in rows)
    return cols, rows, EXIT_VERIFY if failed else EXIT_OK


APPROX_COLUMNS = ("n", "kappa", "alpha", "E_approx", "E_exact", "gap")


def approx_study_problems():
    """Pseudospin hypergeometric kappa = 2 at alpha in {0.4, 0.2, 0.1}, shape held fixed."""
    out = []
    for a in (0.4, 0.2, 0.1):
        pot = Hypergeometric(0.2 * a * a, -1.0, a)
        out.append(BoundProblem(pot, SymmetryLimit.pseudospin(0.0), 5.0, QuantumState(0, 2)))
    return out


def run_approx_error(cfg: RunConfig):
    if cfg.problem is None:
        probs = approx_study_problems()
    else:
        probs = [cfg.problem.with_n(n) for n in sorted(set(cfg.ns))]

    def one(p):
        approx = OracleConfig(**{**cfg.oracle.__dict__, "centrifugal_mode": "approx"})
        exact = OracleConfig(**{**cfg.oracle.__dict__, "centrifugal_mode": "exact"})
        n = p.state.n
        ea = {lv.n: lv.E for lv in find_levels(p, approx, n, solver_cfg=cfg.solver)}
        ee = {lv.n: lv.E for lv in find_levels(p, exact, n, solver_cfg=cfg.solver)}
        if n not in ea or n not in ee:
            return None
        return {"n": n, "kappa": p.state.kappa, "alpha": p.potential.alpha,
                "E_approx": ea[n], "E_exact": ee[n], "gap": abs(ea[n] - ee[n])}

    rows = [r for r in _map(one, probs) if r is not None]
    return APPROX_COLUMNS, rows, EXIT_OK if rows else EXIT_EMPTY


ERRATA_COLUMNS = ("id", "equation", "printed", "corrected", "variants_passing", "selected", "evidence", "detail")


def run_errata(cfg: RunConfig):
    from .errata import resolve, table_rows

    rows = table_rows(resolve(oracle_cfg=cfg.oracle))
    ok = all(r["selected"] for r in rows)
    return ERRATA_COLUMNS, rows, EXIT_OK if ok else EXIT_VERIFY


_COMMANDS = {
    "spectrum": run_spectrum,
    "wavefunction": run_wavefunction,
    "verify": run_verify,
    "approx-error": run_approx_error,
    "errata": run_errata,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse(argv)
        columns, rows, code = _COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        msg = str(exc)
        if msg:
            print(f"nudirac: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except NuDiracError as exc:
        print(f"nudirac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(cfg, columns, rows)
    return code


if __name__ == "__main__":
    sys.exit(main())
