"""Batch driver: seeded random suites, single solves, and report handling.

Commands
    verify   run the invariant suite over seeded random forms
    solve    solve du = f or dbar u = g from a serialized form
    lelong   run the ddbar pipeline on a (1,1)-form or a potential
    report   summarize a JSON-lines report and export CSV

Exit codes: 0 success, 1 check/solve failure, 2 usage or config error.
Reports are JSON-lines, one record per check plus a summary record; records
are sorted by trial so identical (config, seed) runs are byte-identical.
GAUSS_HODGE_THREADS caps trial-level parallelism (default 1).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bridge import (decompose_11, recompose_11, solve_poincare_lelong_full,
                     split_bidegree)
from .calculus import ComplexForm11, Form01, PForm, codifferential, ddbar, exterior_d
from .errors import DegreeOverflowError, GaussHodgeError, NotClosedError
from .fields import REAL, Weight
from .identities import (bochner_identity_report, conjugation_identities_check,
                         d_norm_expansion_report, ddbar_adjoint_identity_report)
from .potentials import parse_potential
from .randomforms import (random_complex_function, random_complexform11,
                          random_pform)
from .scalars import QC
from .solver import solve_d_min_norm, solve_dbar_min_norm

MEASURE_NOTE = "normalized Gaussian pi^(-m/2) exp(-|x|^2) dx"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    mode: str = "exact"
    n: int = 2
    degree: int = 8
    trials: int = 20
    seed: int = 0
    tolerance: float = 1e-10
    output: str | None = None

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def validate(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"mode must be exact or float, got {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.degree < 2:
            raise ValueError("capacity (--degree) must be >= 2")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not (0 < self.tolerance < 1):
            raise ValueError("tolerance must be in (0, 1)")


def _threads() -> int:
    raw = os.environ.get("GAUSS_HODGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _render(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, (Fraction, int)):
        return str(value)
    if isinstance(value, QC):
        return [str(value.re), str(value.im)]
    if isinstance(value, complex):
        return [value.real, value.imag]
    return float(value)


def _close(lhs, rhs, exact: bool, tol: float) -> bool:
    if exact:
        return lhs == rhs
    scale = max(abs(lhs), abs(rhs), 1.0)
    return abs(lhs - rhs) <= tol * scale


def _norm_is_small(norm_sq, scale_sq, exact: bool, tol: float) -> bool:
    if exact:
        return norm_sq == 0
    return norm_sq <= (tol ** 2) * max(scale_sq, 1.0)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_trial(config: RunConfig, trial: int) -> list[dict]:
    rng = random.Random(config.seed * 1_000_003 + trial)
    exact = config.exact
    tol = config.tolerance
    cap = config.degree
    n = config.n
    records: list[dict] = []

    def rec(check: str, ok: bool, **extra):
        row = {"trial": trial, "check": check, "pass": bool(ok)}
        for key, val in extra.items():
            row[key] = _render(val)
        records.append(row)

    weight = Weight.standard(n)
    data_degree = max(0, cap - 2)

    # real-side invariants on R^n, cycling the form degree
    for p in range(0, min(n, 3)):
        u = random_pform(rng, n, p, cap, data_degree, REAL, exact)
        ddu = exterior_d(exterior_d(u))
        rec("dd_zero", _norm_is_small(ddu.norm_sq(), u.norm_sq(), exact, tol),
            n=n, p=p, residual_sq=ddu.norm_sq())

        alpha = random_pform(rng, n, p + 1, cap, data_degree, REAL, exact)
        lhs = exterior_d(u).weighted_inner(alpha)
        rhs = u.weighted_inner(codifferential(alpha, weight))
        rec("adjoint_duality", _close(lhs, rhs, exact, tol), n=n, p=p, lhs=lhs, rhs=rhs)

        expansion = d_norm_expansion_report(alpha, rel_tol=tol if not exact else 1e-12)
        rec("d_norm_expansion", expansion.equal, n=n, p=p,
            lhs=expansion.lhs, rhs=expansion.rhs)

        bochner = bochner_identity_report(alpha, weight,
                                          rel_tol=tol if not exact else 1e-12)
        rec("bochner_identity", bochner.identity_holds, n=n, p=p,
            lhs=bochner.lhs_adjoint + bochner.lhs_d,
            rhs=bochner.rhs_hessian + bochner.rhs_gradient)
        margin_ok = bochner.coercivity_margin >= (0 if exact else -tol)
        rec("coercivity_margin", margin_ok, n=n, p=p, margin=bochner.coercivity_margin)

    # complex-side invariants on C^n
    f11 = random_complexform11(rng, n, cap, data_degree, exact)
    f1, f2 = decompose_11(f11)
    lhs = f1.norm_sq() + f2.norm_sq()
    rhs = 4 * f11.norm_sq()
    rec("decompose_norm_identity", _close(lhs, rhs, exact, tol), n=n, lhs=lhs, rhs=rhs)
    back = recompose_11(f1, f2)
    diff_sq = (back - f11).norm_sq()
    rec("decompose_roundtrip", _norm_is_small(diff_sq, f11.norm_sq(), exact, tol),
        n=n, residual_sq=diff_sq)

    v = random_pform(rng, 2 * n, 1, cap, data_degree, REAL, exact)
    v10, v01 = split_bidegree(v)
    lhs = v10.norm_sq()
    quarter = v.norm_sq() / 4
    rec("split_norm_identity", _close(lhs, quarter, exact, tol)
        and _close(v01.norm_sq(), quarter, exact, tol),
        n=n, lhs=lhs, rhs=quarter)

    u_c = random_complex_function(rng, n, cap, data_degree, exact)
    ca, cb, cc = conjugation_identities_check(u_c)
    rec("conjugation_dbar", ca, n=n)
    rec("mixed_partials_anticommute", cb, n=n)
    rec("ddbar_composes", cc, n=n)

    small_degree = max(0, min(data_degree, 3))
    alpha11 = random_complexform11(rng, n, cap, small_degree, exact)
    adj = ddbar_adjoint_identity_report(alpha11, check_duality=True)
    rec("ddbar_adjoint_duality", adj.duality_exact, n=n)
    rec("ddbar_adjoint_identity_report", True, n=n, lhs=adj.lhs, rhs=adj.rhs,
        discrepancy=adj.discrepancy)

    return records


def cmd_verify(config: RunConfig) -> int:
    workers = min(_threads(), config.trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(lambda t: _verify_trial(config, t),
                                    range(config.trials)))
    else:
        batches = [_verify_trial(config, t) for t in range(config.trials)]

    records = [row for batch in batches for row in batch]
    records.sort(key=lambda r: (r["trial"], r["check"]))
    failed = [r for r in records if not r["pass"] and r["check"] != "ddbar_adjoint_identity_report"]
    summary = {
        "summary": True,
        "command": "verify",
        "mode": config.mode,
        "n": config.n,
        "degree": config.degree,
        "trials": config.trials,
        "seed": config.seed,
        "tolerance": config.tolerance,
        "measure": MEASURE_NOTE,
        "checks": len(records),
        "passed": len(records) - len(failed),
        "failed": len(failed),
    }
    _write_jsonl(records + [summary], config.output)
    if failed:
        print(f"verify: {len(failed)} check(s) failed; first: "
              f"{json.dumps(failed[0], sort_keys=True)}", file=sys.stderr)
        return EXIT_FAIL
    print(f"verify: {len(records)} checks passed "
          f"({config.trials} trials, mode={config.mode}, n={config.n})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _resolve_mode(form, requested: str | None, command: str):
    """Forms infer their mode from the file; an explicit --mode may lower
    exact data to floats but cannot promote float data to exact."""
    if requested is None or (requested == "exact") == form.exact:
        return form
    if requested == "float":
        return form.to_float()
    raise ValueError(f"{command}: --mode exact cannot be applied to float-mode input")


def cmd_solve(config: RunConfig, equation: str, input_path: str,
              requested_mode: str | None) -> int:
    data = _load_json(input_path)
    try:
        if equation == "d":
            form = _resolve_mode(PForm.from_json(data), requested_mode, "solve")
            u, report = solve_d_min_norm(form, Weight.standard(form.n),
                                         config.tolerance)
            solution = u.to_json()
        elif equation == "dbar":
            form = _resolve_mode(Form01.from_json(data), requested_mode, "solve")
            u, report = solve_dbar_min_norm(form, Weight.standard(2 * form.n),
                                            config.tolerance)
            solution = u.to_json()
        else:
            raise ValueError(f"unknown equation {equation!r}")
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except NotClosedError as exc:
        print(f"solve: input is not closed: {exc} "
              f"(residual_sq={exc.residual_norm_sq})", file=sys.stderr)
        return EXIT_FAIL
    except DegreeOverflowError as exc:
        print(f"solve: {exc} (required capacity {exc.required_capacity})", file=sys.stderr)
        return EXIT_FAIL

    payload = {"equation": equation, "measure": MEASURE_NOTE,
               "solution": solution, "report": report.to_json()}
    _write_json(payload, config.output)
    ok = report.bound_satisfied and (report.residual_norm_sq == 0 if report.exact
                                     else True)
    print(f"solve {equation}: ratio {report.to_json()['ratio']} vs bound "
          f"{report.to_json()['bound_constant']}; "
          f"{'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# lelong
# ---------------------------------------------------------------------------


def cmd_lelong(config: RunConfig, input_path: str | None, potential: str | None,
               requested_mode: str | None) -> int:
    try:
        if potential is not None:
            w = parse_potential(potential, config.n, config.degree, config.exact)
            form = ddbar(w)
        else:
            form = _resolve_mode(ComplexForm11.from_json(_load_json(input_path)),
                                 requested_mode, "lelong")
        u, report = solve_poincare_lelong_full(form, tolerance=config.tolerance)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except NotClosedError as exc:
        print(f"lelong: input is not closed: {exc} "
              f"(residual_sq={exc.residual_norm_sq})", file=sys.stderr)
        return EXIT_FAIL
    except DegreeOverflowError as exc:
        print(f"lelong: {exc} (required capacity {exc.required_capacity})", file=sys.stderr)
        return EXIT_FAIL

    payload = {"equation": "ddbar", "measure": MEASURE_NOTE,
               "solution": u.to_json(), "report": report.to_json()}
    if potential is not None:
        payload["from_potential"] = potential
    _write_json(payload, config.output)
    final = report.final
    ok = final.bound_satisfied
    print(f"lelong: final ratio {final.to_json()['ratio']} vs bound 2; "
          f"{'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def cmd_report(input_path: str, output: str | None) -> int:
    rows = []
    with open(input_path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    if not rows:
        print("report: input is empty", file=sys.stderr)
        return EXIT_FAIL
    checks = [r for r in rows if not r.get("summary")]
    summaries = [r for r in rows if r.get("summary")]

    by_check: dict[str, list[dict]] = {}
    for r in checks:
        by_check.setdefault(r.get("check", "?"), []).append(r)
    print(f"report: {len(checks)} check records, {len(summaries)} summary record(s)")
    for name in sorted(by_check):
        group = by_check[name]
        passed = sum(1 for r in group if r.get("pass"))
        print(f"  {name}: {passed}/{len(group)} pass")
    if summaries:
        s = summaries[-1]
        print(f"  summary: passed={s.get('passed')} failed={s.get('failed')} "
              f"mode={s.get('mode')} seed={s.get('seed')}")

    if output:
        fieldnames = sorted({key for r in rows for key in r})
        with open(output, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fieldnames, restval="")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v
                                 for k, v in r.items()})
        print(f"report: wrote CSV to {output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


def _write_jsonl(records: list[dict], output: str | None):
    text = "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n"
                   for r in records)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_json(payload: dict, output: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gauss-hodge",
        description="Exactly verified weighted exterior calculus and solvers "
                    "under the Gaussian weight.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, trials_default=20):
        p.add_argument("--mode", choices=("exact", "float"), default=None,
                       help="exact rational or double-precision arithmetic "
                            "(default: exact; solve/lelong infer the mode from "
                            "input files, and --mode float lowers exact input)")
        p.add_argument("--n", type=int, default=2,
                       help="real dimension for d-suites, complex dimension for "
                            "dbar/lelong suites")
        p.add_argument("--degree", type=int, default=8,
                       help="Hermite capacity (max total degree)")
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", type=float, default=1e-10,
                       help="float-mode relative tolerance (ignored in exact mode)")
        p.add_argument("--output", default=None, help="report file path")

    p_verify = sub.add_parser("verify", help="run the invariant suite")
    add_common(p_verify)

    p_solve = sub.add_parser("solve", help="solve du=f or dbar u=g from a JSON form")
    add_common(p_solve, trials_default=1)
    p_solve.add_argument("--equation", choices=("d", "dbar"), required=True)
    p_solve.add_argument("--input", required=True)

    p_lelong = sub.add_parser("lelong", help="solve ddbar u = f")
    add_common(p_lelong, trials_default=1)
    group = p_lelong.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", default=None, help="(1,1)-form JSON file")
    group.add_argument("--from-potential", default=None,
                       help="potential expression, e.g. 'z*conj(z)'")

    p_report = sub.add_parser("report", help="summarize a JSONL report, export CSV")
    p_report.add_argument("--input", required=True)
    p_report.add_argument("--output", default=None, help="CSV output path")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0

    if args.command == "report":
        try:
            return cmd_report(args.input, args.output)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"report: {exc}", file=sys.stderr)
            return EXIT_USAGE

    config = RunConfig(mode=args.mode or "exact", n=args.n, degree=args.degree,
                       trials=args.trials, seed=args.seed,
                       tolerance=args.tolerance, output=args.output)
    try:
        config.validate()
    except ValueError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "solve":
            return cmd_solve(config, args.equation, args.input, args.mode)
        if args.command == "lelong":
            return cmd_lelong(config, args.input, args.from_potential, args.mode)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"{args.command}: bad input: {exc!r}", file=sys.stderr)
        return EXIT_USAGE
    except GaussHodgeError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
