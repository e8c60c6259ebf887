"""Command-line interface: ``torusrp <command> [options]``.

Exit codes: 0 success, 2 invalid input or config, 3 I/O or numerical failure.
Mathematical outcomes (feasible, infeasible, no certificate) never change the
exit code.
"""

from __future__ import annotations

import argparse
import datetime
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    a00_defect,
    box_indices,
    is_rp_candidate,
    lebesgue_on_points,
    moments_at,
    poisson_eval,
    rp_defect,
)
from .duality import (
    FRAMINGS,
    dual_halfplane_certificate,
    duality_audit,
    primal_positive_annihilator,
)
from .errors import InvalidInputError, NumericalFailure
from .io import read_measure, read_points, read_poly, write_measure
from .projection import (
    MonomialBasis,
    generate_annihilator,
    project,
    residual_profile,
    uniform_best_approx,
)
from .report import FORMATS, emit_report
from .scenarios import (
    DEFAULT_TOL,
    ScenarioSpec,
    _jsonable,
    get_builtin,
    list_scenarios,
    parse_target,
    run_batch,
    support_points,
)

EXIT_OK, EXIT_INPUT, EXIT_FAILURE = 0, 2, 3

log = logging.getLogger("torusrp")


def _doc(args, title: str, name: str, result: dict, tables=None, verdicts=()) -> dict:
    doc = {
        "scenario": None,
        "title": title,
        "analyses": [{"name": name, "status": "ok", "result": _jsonable(result),
                      "tables": _jsonable(tables or {}), "verdicts": list(verdicts),
                      "error": None}],
        "verdicts": list(verdicts),
        "version": __version__,
        "timing": None,
    }
    if not args.no_timestamp:
        doc["timing"] = {"started": args._started, "total_seconds": time.perf_counter() - args._t0}
    return doc


def _emit(args, doc) -> int:
    text = emit_report(doc, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def _builtin_points(args):
    spec = get_builtin(args.builtin).with_overrides(grid=args.grid)
    return support_points(spec)


def _points(args):
    if args.set:
        return np.array([p.angles for p in read_points(args.set)])
    if args.builtin:
        return _builtin_points(args)
    raise InvalidInputError("give a point set with --set FILE or --builtin NAME")


def _measure(args):
    if args.measure:
        return read_measure(args.measure)
    if args.builtin:
        return lebesgue_on_points(_builtin_points(args))
    raise InvalidInputError("give a measure with --measure FILE or --builtin NAME")


def _target(args, dim: int):
    if args.poly:
        return read_poly(args.poly, analytic=False)
    if args.target:
        try:
            k = [int(x) for x in args.target.split(",")]
        except ValueError as exc:
            raise InvalidInputError(f"--target expects comma-separated integers: {exc}") from exc
        return parse_target(k, dim)
    return parse_target(None, dim)


def _table(columns, rows):
    return {"columns": list(columns), "rows": [list(r) for r in rows]}


def cmd_moments(args):
    mu = _measure(args)
    K = box_indices(mu.dim, -args.degree, args.degree)
    M = moments_at(mu, K)
    cols = [f"k{j + 1}" for j in range(mu.dim)] + ["re", "im"]
    rows = [(*map(int, k), float(v.real), float(v.imag)) for k, v in zip(K, M)]
    res = {"dim": mu.dim, "degree": args.degree, "atoms": mu.size}
    return _emit(args, _doc(args, "moments", "moments", res, {"moments": _table(cols, rows)}))


def cmd_rp_check(args):
    mu = _measure(args)
    tol = args.tol if args.tol is not None else DEFAULT_TOL["defect"]
    d = rp_defect(mu, args.degree)
    ok = is_rp_candidate(mu, args.degree, tol)
    v = f"rp defect {d:.3g} at N={args.degree}: " + (
        "candidate at this truncation" if ok else "not an RP candidate")
    res = {"rp_defect": d, "tol": tol, "candidate": ok, "degree": args.degree}
    return _emit(args, _doc(args, "rp-check", "rp-check", res, verdicts=[v]))


def cmd_a00_check(args):
    mu = _measure(args)
    tol = args.tol if args.tol is not None else DEFAULT_TOL["defect"]
    d = a00_defect(mu, args.degree)
    res = {"a00_defect": d, "tol": tol, "annihilates": d <= tol, "degree": args.degree}
    v = f"a00 defect {d:.3g} at N={args.degree}"
    return _emit(args, _doc(args, "a00-check", "a00-check", res, verdicts=[v]))


def cmd_primal(args):
    P = _points(args)
    rep = primal_positive_annihilator(P, args.degree, args.framing)
    if rep.status == "numerical-failure":
        raise NumericalFailure("primal LP ended in numerical failure")
    tables = {}
    if rep.feasible:
        cols = ["point"] + [f"angle{j + 1}" for j in range(P.shape[1])] + ["weight"]
        tables["weights"] = _table(cols, [(i, *p, w) for i, (p, w) in enumerate(zip(P, rep.weights))])
    v = f"primal {rep.status} at N={args.degree} ({rep.framing} framing)"
    return _emit(args, _doc(args, "primal", "primal", rep.to_dict(), tables, [v]))


def cmd_certificate(args):
    P = _points(args)
    cert = dual_halfplane_certificate(P, args.degree, args.framing)
    if cert is None:
        res, tables = {"found": False, "epsilon": None}, {}
        v = f"no certificate at N={args.degree}: inconclusive at truncation"
    else:
        res = {"found": True, **cert.to_dict()}
        cols = ["point"] + [f"angle{j + 1}" for j in range(P.shape[1])] + ["margin"]
        tables = {"margins": _table(cols, [(i, *p, mg) for i, (p, mg) in
                                            enumerate(zip(P, cert.margins))])}
        v = f"certificate found at N={args.degree} with epsilon={cert.epsilon:.6g}"
    return _emit(args, _doc(args, "certificate", "certificate", res, tables, [v]))


def cmd_audit(args):
    rec = duality_audit(_points(args), args.degree, args.framing)
    if rec.verdict == "solver failure":
        raise NumericalFailure("duality audit hit a solver failure")
    return _emit(args, _doc(args, "audit", "audit", rec.to_dict(), verdicts=[rec.verdict]))


def cmd_project(args):
    mu = _measure(args)
    basis = MonomialBasis.sk_box(mu.dim, args.k0, args.degree)
    res = project(_target(args, mu.dim), basis, mu)
    return _emit(args, _doc(args, "project", "project", res.to_dict()))


def cmd_residual_profile(args):
    mu = _measure(args)
    prof = residual_profile(_target(args, mu.dim), mu, args.degree)
    res = {"final_residual": prof[-1][1], "degree": args.degree}
    tables = {"residual_profile": _table(["N", "residual"], prof)}
    return _emit(args, _doc(args, "residual-profile", "residual-profile", res, tables))


def cmd_gen_annihilator(args):
    mu = _measure(args)
    res = generate_annihilator(_target(args, mu.dim), mu, args.degree)
    if args.measure_out:
        write_measure(res.measure, args.measure_out)
    return _emit(args, _doc(args, "gen-annihilator", "gen-annihilator", res.to_dict()))


def cmd_best_approx(args):
    P = _points(args)
    target = _target(args, P.shape[1])
    fit = uniform_best_approx(target.evaluate(P), P, MonomialBasis.sk_box(P.shape[1], args.k0,
                                                                          args.degree))
    return _emit(args, _doc(args, "best-approx", "best-approx", fit.to_dict()))


def _parse_z(text: str):
    try:
        return [complex(x.strip().replace(" ", "")) for x in text.split(",")]
    except ValueError as exc:
        raise InvalidInputError(f"--z expects comma-separated complex numbers: {exc}") from exc


def cmd_poisson(args):
    mu = _measure(args)
    z = _parse_z(args.z)
    val = poisson_eval(mu, z)
    res = {"z": [{"re": c.real, "im": c.imag} for c in z], "value": {"re": val.real, "im": val.imag}}
    return _emit(args, _doc(args, "poisson", "poisson", res))


def cmd_scenario_list(args):
    rows = list_scenarios()
    if args.format == "json":
        sys.stdout.write(json.dumps([{"name": n, "description": d} for n, d in rows], indent=2) + "\n")
    else:
        width = max(len(n) for n, _ in rows)
        for n, d in rows:
            sys.stdout.write(f"{n:<{width}}  {d}\n")
    return EXIT_OK


def _load_config(path) -> ScenarioSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc
    if isinstance(data, dict) and "builtin" in data:
        base = get_builtin(data.pop("builtin")).to_dict()
        base.update(data)
        data = base
    return ScenarioSpec.from_dict(data)


def _overridden(spec: ScenarioSpec, args) -> ScenarioSpec:
    tol = None
    if args.tol is not None:
        tol = {**spec.tol, "defect": args.tol}
    return spec.with_overrides(degree=args.degree, grid=args.grid, framing=args.framing,
                               seed=args.seed, tol=tol)


def cmd_scenario_run(args):
    specs = [_load_config(p) for p in args.config or []]
    specs += [get_builtin(n) for n in args.names]
    if not specs:
        raise InvalidInputError("name a builtin scenario or pass --config FILE")
    specs = [_overridden(s, args) for s in specs]
    reports = run_batch(specs, timestamp=not args.no_timestamp)
    if len(reports) == 1:
        text = emit_report(reports[0], args.format, args.out)
        if args.out is None:
            sys.stdout.write(text)
    else:
        outdir = Path(args.out) if args.out else None
        if outdir is not None:
            outdir.mkdir(parents=True, exist_ok=True)
        for rep in reports:
            path = outdir / f"{rep.scenario['name']}.{args.format}" if outdir else None
            text = emit_report(rep, args.format, path)
            if outdir is None:
                sys.stdout.write(text)
    failed = [(r.scenario["name"], a) for r in reports for a in r.failed]
    for name, a in failed:
        log.error("scenario %s: analysis %s failed", name, a)
    return EXIT_FAILURE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", help="write the report here instead of stdout")
    out.add_argument("--format", choices=FORMATS, default="json")
    out.add_argument("--no-timestamp", action="store_true",
                     help="omit timing so identical inputs give identical output")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--measure", help="measure JSON file")
    src.add_argument("--set", help="point-set JSON file")
    src.add_argument("--builtin", help="take the support of a builtin scenario")
    src.add_argument("--grid", type=int, help="sample count for builtin supports")

    deg = argparse.ArgumentParser(add_help=False)
    deg.add_argument("--degree", "-N", type=int, required=True, help="truncation degree N")

    fr = argparse.ArgumentParser(add_help=False)
    fr.add_argument("--framing", choices=FRAMINGS, default="rp")

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=float, help="defect tolerance")

    tgt = argparse.ArgumentParser(add_help=False)
    tgt.add_argument("--poly", help="target polynomial JSON file")
    tgt.add_argument("--target", help="target monomial index, e.g. 3,0 (default: constant 1)")
    tgt.add_argument("--k0", type=int, default=1, help="lowest exponent of the basis box")

    p = argparse.ArgumentParser(prog="torusrp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, parents, help_):
        sp = sub.add_parser(name, parents=parents, help=help_)
        sp.set_defaults(func=func)
        return sp

    add("moments", cmd_moments, [src, deg, out], "moment table over |k_j| <= N")
    add("rp-check", cmd_rp_check, [src, deg, tol, out], "mixed-moment (RP) defect")
    add("a00-check", cmd_a00_check, [src, deg, tol, out], "a00 annihilation defect")
    add("primal", cmd_primal, [src, deg, fr, out], "LP search for a positive annihilator")
    add("certificate", cmd_certificate, [src, deg, fr, out], "half-plane certificate LP")
    add("audit", cmd_audit, [src, deg, fr, out], "run primal and dual, check exclusivity")
    add("project", cmd_project, [src, deg, tgt, out], "L2(mu) projection onto a monomial box")
    add("residual-profile", cmd_residual_profile, [src, deg, tgt, out],
        "projection residual for N = 1..degree")
    ga = add("gen-annihilator", cmd_gen_annihilator, [src, deg, tgt, out],
             "build |f - F|^2 dmu from a projection")
    ga.add_argument("--measure-out", help="also write the generated measure here")
    add("best-approx", cmd_best_approx, [src, deg, tgt, out], "sup-norm fit by LP")
    po = add("poisson", cmd_poisson, [src, out], "Poisson integral at an interior point")
    po.add_argument("--z", required=True, help="comma-separated complex coordinates")

    sc = sub.add_parser("scenario", help="builtin and config-driven scenarios")
    scs = sc.add_subparsers(dest="scenario_command", required=True)
    ls = scs.add_parser("list", help="list builtin scenarios")
    ls.add_argument("--format", choices=("text", "json"), default="text")
    ls.set_defaults(func=cmd_scenario_list)
    run = scs.add_parser("run", parents=[out, tol], help="run builtins or config files")
    run.add_argument("names", nargs="*", help="builtin scenario names")
    run.add_argument("--config", action="append", help="scenario JSON file (repeatable)")
    run.add_argument("--degree", "-N", type=int)
    run.add_argument("--grid", type=int)
    run.add_argument("--framing", choices=FRAMINGS)
    run.add_argument("--seed", type=int)
    run.set_defaults(func=cmd_scenario_run)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    args._t0 = time.perf_counter()
    args._started = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
