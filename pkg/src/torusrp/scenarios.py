"""Declarative scenarios: a support generator, a framing, a degree and a list of analyses.

A scenario runs its analyses in declared order over one finite support. Each
analysis yields a result dict, optional numeric tables and verdict lines;
failures are captured per analysis so the remaining ones still run.
"""

from __future__ import annotations

import dataclasses
import datetime
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import (
    TWO_PI,
    AtomicMeasure,
    CurveSpec,
    a00_defect,
    box_indices,
    cantor_points,
    lebesgue_on_points,
    moments_at,
    points_array,
    poisson_eval,
    product_grid,
    reflect_last,
    rp_defect,
    sample_graph_curve,
    sample_monomial_arc,
)
from .duality import (
    FRAMINGS,
    dual_halfplane_certificate,
    duality_audit,
    primal_positive_annihilator,
)
from .errors import InvalidInputError, NumericalFailure
from .poly import TrigPolynomial
from .projection import (
    MonomialBasis,
    generate_annihilator,
    residual_profile,
    uniform_best_approx,
)

ANALYSES = ("rp-check", "primal", "certificate", "audit", "residual-profile",
            "gen-annihilator", "best-approx", "poisson-slice", "evidence-table")
SUPPORT_KINDS = ("curve", "arc", "cantor", "points", "file", "grid", "random")
TRANSFORMS = (None, "T")
EVIDENCE_TAG = "evidence, not verification"
INCONCLUSIVE = "inconclusive at truncation"

DEFAULT_TOL = {"defect": 1e-8, "vanish": 1e-6, "approx": 1e-6}
DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5)
# series cut-off for the Poisson cross-check; radii above 0.5 need more terms
POISSON_SERIES_DEGREE = 48


def _jsonable(x):
    """Plain JSON types only; non-finite floats become None."""
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _jsonable(x.real), "im": _jsonable(x.imag)}
    return x


def parse_target(target, dim: int) -> TrigPolynomial:
    """Target polynomial from None (constant 1), a single index, or a polynomial dict."""
    if target is None:
        return TrigPolynomial.constant(dim)
    if isinstance(target, dict):
        from .io import poly_from_dict

        return poly_from_dict(target, analytic=False)
    if isinstance(target, (list, tuple)) and all(isinstance(v, (int, np.integer)) for v in target):
        return TrigPolynomial.monomial(tuple(target))
    raise InvalidInputError(f"cannot interpret target {target!r}")


@dataclass(frozen=True)
class ScenarioSpec:
    """Everything needed to reproduce one run.

    ``support`` is a dict with a ``kind`` key:

    * ``curve``  -- ``curve`` (family name or CurveSpec fields), ``m``
    * ``arc``    -- ``half_width``, ``m``, ``power``, ``z2_power``, ``theta``,
      ``windows``; ``preimage`` (default True) reflects the arc set so the
      support is the candidate set for RP-measures
    * ``cantor`` -- ``depth``, ``carrier``
    * ``points`` -- explicit ``points`` list; ``file`` -- ``path`` to a point set
    * ``grid``   -- ``m`` (and ``dim``), the full product grid
    * ``random`` -- ``m`` uniform points (``dim``), drawn with ``seed``

    ``grid`` overrides the support's sample count. ``transform="T"`` reflects
    the last coordinate of the generated support before any analysis runs.
    """

    name: str
    framing: str = "rp"
    support: dict = field(default_factory=lambda: {"kind": "curve", "curve": "negated"})
    degree: int = 1
    grid: int | None = None
    transform: str | None = None
    analyses: tuple[str, ...] = ("primal", "certificate")
    tol: dict = field(default_factory=dict)
    seed: int = 0
    target: object = None
    params: dict = field(default_factory=dict)
    claims_orthogonality: bool = False
    anchor: str | dict | None = None
    description: str = ""
    tags: tuple[str, ...] = ()
    coverage: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise InvalidInputError("scenario needs a name")
        if self.framing not in FRAMINGS:
            raise InvalidInputError(f"framing must be one of {FRAMINGS}")
        if isinstance(self.degree, bool) or int(self.degree) != self.degree or self.degree < 1:
            raise InvalidInputError("degree N must be an integer >= 1")
        if self.grid is not None and (int(self.grid) != self.grid or self.grid < 1):
            raise InvalidInputError("grid size must be a positive integer")
        if not isinstance(self.support, dict) or self.support.get("kind") not in SUPPORT_KINDS:
            raise InvalidInputError(f"support needs a kind in {SUPPORT_KINDS}")
        if self.transform not in TRANSFORMS:
            raise InvalidInputError("transform must be null or 'T'")
        bad = [a for a in self.analyses if a not in ANALYSES]
        if bad or not self.analyses:
            raise InvalidInputError(f"unknown analyses {bad}; choose from {ANALYSES}")
        unknown = set(self.tol) - set(DEFAULT_TOL)
        if unknown:
            raise InvalidInputError(f"unknown tolerance keys {sorted(unknown)}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "analyses", tuple(self.analyses))
        object.__setattr__(self, "tags", tuple(self.tags))
        object.__setattr__(self, "coverage", tuple(self.coverage))
        if self.claims_orthogonality:
            m = self.sample_count
            if m is None or m < 2 * self.degree + 1:
                raise InvalidInputError(
                    f"discrete orthogonality is claimed but the sample count {m} "
                    f"is below 2N+1 = {2 * self.degree + 1}")

    @property
    def sample_count(self) -> int | None:
        if self.grid is not None:
            return int(self.grid)
        m = self.support.get("m")
        return None if m is None else int(m)

    def tolerance(self, key: str) -> float:
        return float(self.tol.get(key, DEFAULT_TOL[key]))

    def with_overrides(self, **changes) -> "ScenarioSpec":
        """Copy with the given non-None fields replaced."""
        kept = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **kept)

    def to_dict(self) -> dict:
        return _jsonable(dataclasses.asdict(self))

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioSpec":
        if not isinstance(data, dict):
            raise InvalidInputError("scenario config must be a JSON object")
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidInputError(f"unknown scenario fields {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidInputError(f"malformed scenario config: {exc}") from exc


def support_points(spec: ScenarioSpec) -> np.ndarray:
    s = spec.support
    kind = s["kind"]
    m = spec.sample_count
    if kind == "curve":
        P = points_array(sample_graph_curve(CurveSpec.parse(s.get("curve", "identity")), m or 32))
    elif kind == "arc":
        P = points_array(sample_monomial_arc(
            m or 128, float(s["half_width"]), int(s.get("power", 1)), int(s.get("z2_power", 1)),
            float(s.get("theta", 0.0)), int(s.get("windows", 8))))
        if s.get("preimage", True):
            P = reflect_last(P)
    elif kind == "cantor":
        P = points_array(cantor_points(int(s.get("depth", 4)), s.get("carrier", "negated")))
    elif kind == "points":
        P = points_array(s["points"])
    elif kind == "file":
        from .io import read_points

        P = points_array(read_points(s["path"]))
    elif kind == "grid":
        P = points_array(product_grid(m or 8, int(s.get("dim", 2))))
    else:
        rng = np.random.default_rng(spec.seed)
        P = points_array(rng.uniform(0.0, TWO_PI, (m or 16, int(s.get("dim", 2)))))
    if spec.transform == "T":
        P = reflect_last(P)
    return P


@dataclass
class _Context:
    spec: ScenarioSpec
    points: np.ndarray

    @property
    def N(self) -> int:
        return self.spec.degree

    @property
    def measure(self) -> AtomicMeasure:
        return lebesgue_on_points(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def anchored(self, claim: str, analysis: str) -> str:
        anchor = self.spec.anchor
        if isinstance(anchor, dict):
            anchor = anchor.get(analysis)
        return f"{claim}; consistent with {anchor}" if anchor else claim


def _table(columns, rows) -> dict:
    return {"columns": list(columns), "rows": [list(r) for r in rows]}


def _excluded(framing: str) -> str:
    return "RP-measure" if framing == "rp" else "measure annihilating A_0"


def _rp_check(ctx: _Context):
    tol = ctx.spec.tolerance("defect")
    mu = ctx.measure
    rp = rp_defect(mu, ctx.N)
    a00 = a00_defect(mu, ctx.N)
    kind = "rp" if ctx.spec.framing == "rp" else "a00"
    d = rp if kind == "rp" else a00
    ok = d <= tol
    verdict = (ctx.anchored(f"uniform measure has {kind} defect {d:.3g} <= {tol:g} up to "
                            f"N={ctx.N}: candidate at this truncation", "rp-check") if ok else
               f"uniform measure has {kind} defect {d:.3g} > {tol:g} at N={ctx.N}: "
               f"not a candidate at this truncation")
    return {"rp_defect": rp, "a00_defect": a00, "tol": tol, "candidate": ok}, {}, [verdict]


def _primal(ctx: _Context):
    rep = primal_positive_annihilator(ctx.points, ctx.N, ctx.spec.framing)
    out = rep.to_dict()
    if rep.feasible:
        verdict = (f"primal feasible at N={ctx.N}: a positive measure on these "
                   f"{rep.grid_size} points has vanishing {rep.framing} moments "
                   f"(existence at this truncation only)")
    elif rep.status == "infeasible":
        verdict = (f"primal infeasible at N={ctx.N}: no probability measure on these "
                   f"points has vanishing {rep.framing} moments")
    else:
        raise NumericalFailure("primal LP ended in numerical failure")
    return out, {}, [verdict]


def _certificate(ctx: _Context):
    cert = dual_halfplane_certificate(ctx.points, ctx.N, ctx.spec.framing)
    if cert is None:
        verdict = f"no certificate at N={ctx.N}: {INCONCLUSIVE}"
        return {"found": False, "epsilon": None}, {}, [verdict]
    out = {"found": True, **cert.to_dict()}
    rows = [(i, *[float(a) for a in p], mg)
            for i, (p, mg) in enumerate(zip(ctx.points, cert.margins))]
    cols = ["point"] + [f"angle{j + 1}" for j in range(ctx.dim)] + ["margin"]
    claim = (f"certificate found (epsilon={cert.epsilon:.6g}) => no positive "
             f"{_excluded(ctx.spec.framing)} supported here at truncation N={ctx.N}")
    return out, {"margins": _table(cols, rows)}, [ctx.anchored(claim, "certificate")]


def _audit(ctx: _Context):
    rec = duality_audit(ctx.points, ctx.N, ctx.spec.framing)
    if rec.verdict == "solver failure":
        raise NumericalFailure("duality audit hit a solver failure")
    return rec.to_dict(), {}, [f"duality audit at N={ctx.N}: {rec.verdict}"]


def _residual_profile(ctx: _Context):
    target = parse_target(ctx.spec.target, ctx.dim)
    prof = residual_profile(target, ctx.measure, ctx.N)
    tol = ctx.spec.tolerance("vanish")
    last_N, last = prof[-1]
    first_small = next((n for n, r in prof if r <= tol), None)
    if last <= tol:
        verdict = ctx.anchored(
            f"residual of the target reaches {last:.3g} by N={last_N} "
            f"(below {tol:g} from N={first_small})", "residual-profile")
    else:
        verdict = f"residual {last:.3g} at N={last_N}: {INCONCLUSIVE}"
    out = {"target": _describe_target(target), "final_residual": last,
           "vanishes_from": first_small, "tol": tol}
    return out, {"residual_profile": _table(["N", "residual"], prof)}, [verdict]


def _describe_target(f: TrigPolynomial) -> list:
    return [{"k": list(k), "re": c.real, "im": c.imag} for k, c in f.coefficients.items()]


def _gen_annihilator(ctx: _Context):
    target = parse_target(ctx.spec.target, ctx.dim)
    res = generate_annihilator(target, ctx.measure, ctx.N)
    out = res.to_dict()
    out.pop("measure")
    out["target"] = _describe_target(target)
    if res.flag == "vanishing-residual":
        verdict = "target lies in the projection span: no measure generated (vanishing residual)"
    elif res.certified_degree is None:
        verdict = f"target degree is not below N={ctx.N}: annihilation is not certified at any degree"
    else:
        mass = res.measure.mass.real
        ok = res.defect <= 1e-8 * mass
        out["annihilates"] = ok
        verdict = (ctx.anchored(
            f"generated positive measure of mass {mass:.6g} annihilates a00 monomials up to "
            f"degree {res.certified_degree} (defect {res.defect:.3g})", "gen-annihilator") if ok else
            f"generated measure has a00 defect {res.defect:.3g} at degree "
            f"{res.certified_degree}: {INCONCLUSIVE}")
    return out, {}, [verdict]


def _best_approx(ctx: _Context):
    target = parse_target(ctx.spec.target, ctx.dim)
    values = target.evaluate(ctx.points)
    fit = uniform_best_approx(values, ctx.points, MonomialBasis.a00_box(ctx.dim, ctx.N))
    tol = ctx.spec.tolerance("approx")
    out = fit.to_dict()
    out["target"] = _describe_target(target)
    if fit.value <= tol:
        verdict = ctx.anchored(
            f"target uniformly approximated to {fit.value:.3g} on the support by a00_box({ctx.N})",
            "best-approx")
    else:
        verdict = (f"min-max error lies in [{fit.lp_bound:.6g}, {fit.value:.6g}] with "
                   f"a00_box({ctx.N}): not uniformly approximated at this truncation")
    return out, {}, [verdict]


def _poisson_series(mu: AtomicMeasure, r: float, K: int) -> float:
    idx = box_indices(mu.dim, -K, K)
    M = moments_at(mu, -idx)
    return float(np.real(M @ r ** np.abs(idx).sum(axis=1)))


def _poisson_slice(ctx: _Context):
    radii = [float(r) for r in ctx.spec.params.get("radii", DEFAULT_RADII)]
    if any(not 0 <= r < 1 for r in radii):
        raise InvalidInputError("Poisson radii must lie in [0, 1)")
    mu = ctx.measure
    rows = []
    for r in radii:
        direct = poisson_eval(mu, [r] * ctx.dim).real
        series = _poisson_series(mu, r, POISSON_SERIES_DEGREE) if r <= 0.5 else None
        rows.append((r, direct, series))
    gaps = [abs(d - s) for _, d, s in rows if s is not None]
    out = {"radii": radii, "max_series_gap": max(gaps) if gaps else None}
    verdict = (f"Poisson integral on the slice z=(r,...,r): kernel sum and moment series "
               f"agree to {max(gaps):.3g}" if gaps else
               "Poisson integral evaluated on the slice z=(r,...,r)")
    return out, {"poisson_slice": _table(["r", "poisson", "series"], rows)}, [verdict]


def _evidence_table(ctx: _Context):
    p = ctx.spec.params
    depths = [int(d) for d in p.get("depths", range(1, 7))]
    degrees = [int(n) for n in p.get("degrees", range(1, ctx.N + 1))]
    carrier = ctx.spec.support.get("carrier", "negated")
    rows = []
    for depth in depths:
        P = points_array(cantor_points(depth, carrier))
        if ctx.spec.transform == "T":
            P = reflect_last(P)
        for N in degrees:
            rec = duality_audit(P, N, ctx.spec.framing)
            rows.append((depth, N, P.shape[0], rec.primal_status,
                         rec.certificate_epsilon, rec.exclusive))
    n_cert = sum(r[4] is not None for r in rows)
    n_feas = sum(r[3] == "feasible" for r in rows)
    out = {"tag": EVIDENCE_TAG, "depths": depths, "degrees": degrees,
           "certificates": n_cert, "feasible": n_feas, "cells": len(rows)}
    verdict = (f"Cantor sample table ({EVIDENCE_TAG}): certificates in {n_cert} of {len(rows)} "
               f"(depth, N) cells, truncation-feasible primals in {n_feas}")
    cols = ["depth", "N", "points", "primal", "certificate_epsilon", "exclusive"]
    return out, {"evidence": _table(cols, rows)}, [verdict]


_RUNNERS = {
    "rp-check": _rp_check,
    "primal": _primal,
    "certificate": _certificate,
    "audit": _audit,
    "residual-profile": _residual_profile,
    "gen-annihilator": _gen_annihilator,
    "best-approx": _best_approx,
    "poisson-slice": _poisson_slice,
    "evidence-table": _evidence_table,
}


@dataclass
class AnalysisResult:
    name: str
    status: str  # ok | error
    result: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    error: str | None = None

    def to_dict(self) -> dict:
        return _jsonable(dataclasses.asdict(self))


@dataclass
class RunReport:
    scenario: dict
    analyses: list[AnalysisResult]
    verdicts: list[str]
    version: str = __version__
    timing: dict | None = None

    @property
    def failed(self) -> list[str]:
        return [a.name for a in self.analyses if a.status != "ok"]

    def analysis(self, name: str) -> AnalysisResult:
        for a in self.analyses:
            if a.name == name:
                return a
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "analyses": [a.to_dict() for a in self.analyses],
            "verdicts": list(self.verdicts),
            "version": self.version,
            "timing": self.timing,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        try:
            return cls(scenario=data["scenario"],
                       analyses=[AnalysisResult(**a) for a in data["analyses"]],
                       verdicts=list(data["verdicts"]), version=data["version"],
                       timing=data.get("timing"))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed report document: {exc}") from exc


def run_scenario(spec: ScenarioSpec, timestamp: bool = True) -> RunReport:
    """Run the scenario's analyses in order; errors are recorded, not raised."""
    started = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    results: list[AnalysisResult] = []
    seconds: dict[str, float] = {}
    try:
        ctx = _Context(spec, support_points(spec))
        setup_error = None
    except (InvalidInputError, NumericalFailure, OSError) as exc:
        ctx, setup_error = None, f"support generation failed: {exc}"
    for name in spec.analyses:
        t1 = time.perf_counter()
        if ctx is None:
            results.append(AnalysisResult(name, "error", error=setup_error))
            continue
        try:
            out, tables, verdicts = _RUNNERS[name](ctx)
            results.append(AnalysisResult(name, "ok", _jsonable(out), _jsonable(tables),
                                          list(verdicts)))
        except (InvalidInputError, NumericalFailure, OSError, np.linalg.LinAlgError) as exc:
            results.append(AnalysisResult(name, "error", error=f"{type(exc).__name__}: {exc}"))
        seconds[name] = time.perf_counter() - t1
    verdicts = [v for r in results if r.status == "ok" for v in r.verdicts]
    if EVIDENCE_TAG in spec.tags:
        verdicts.insert(0, f"scenario tagged '{EVIDENCE_TAG}': finite samples cannot verify "
                           f"continuum statements")
    timing = None
    if timestamp:
        timing = {"started": started, "total_seconds": time.perf_counter() - t0,
                  "per_analysis": seconds}
    return RunReport(scenario=spec.to_dict(), analyses=results, verdicts=verdicts,
                     timing=timing)


def run_batch(specs: list[ScenarioSpec], workers: int | None = None,
              timestamp: bool = True) -> list[RunReport]:
    """Run independent scenarios concurrently; reports keep the input order."""
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: run_scenario(s, timestamp), specs))


_ANTI = {"kind": "curve", "curve": "negated"}
_DIAG = {"kind": "curve", "curve": "identity"}

BUILTINS: dict[str, ScenarioSpec] = {s.name: s for s in [
    ScenarioSpec(
        "antidiagonal-lebesgue", "rp", _ANTI, degree=7, grid=32,
        analyses=("rp-check", "primal", "certificate", "audit", "poisson-slice"),
        claims_orthogonality=True,
        anchor={"rp-check": "the mixed-coefficient test for RP-measures"},
        description="uniform measure on 32 points of (v, -v): an RP-measure at every truncation N < 32",
        coverage=("rp-criterion",)),
    ScenarioSpec(
        "diagonal-excluded", "rp", _DIAG, degree=1, grid=32,
        analyses=("primal", "certificate", "audit"),
        anchor="positive-slope exclusion",
        description="32 points of the diagonal (v, v): excluded by a degree-1 certificate",
        coverage=("positive-slope", "half-plane")),
    ScenarioSpec(
        "positive-slope-perturbed", "rp",
        {"kind": "curve", "curve": {"family": "perturbed", "alpha": 0.3}}, degree=4, grid=64,
        analyses=("primal", "certificate", "audit"), anchor="positive-slope exclusion",
        description="64 points of (v, v + 0.3 sin v), a strictly increasing graph",
        coverage=("positive-slope",)),
    ScenarioSpec(
        "positive-slope-staircase", "rp",
        {"kind": "curve", "curve": {"family": "staircase", "steps": 4, "steep": 1.5}},
        degree=3, grid=64, analyses=("primal", "certificate", "audit"),
        anchor="positive-slope exclusion",
        description="64 points of a piecewise-linear strictly increasing graph",
        coverage=("positive-slope",)),
    ScenarioSpec(
        "monomial-arc", "a00",
        {"kind": "arc", "half_width": math.pi / 3, "m": 128, "power": 1, "z2_power": 1},
        degree=1, transform="T", analyses=("certificate", "primal", "audit"),
        anchor="the monomial-arc exclusion",
        description="reflected preimage of the arc |arg(z1 z2)| <= pi/3, mapped back by T",
        coverage=("monomial-arc", "half-plane")),
    ScenarioSpec(
        "halfplane-preimage", "rp",
        {"kind": "arc", "half_width": 1.2, "m": 96, "power": 2, "z2_power": 1, "theta": 0.7},
        degree=2, analyses=("certificate", "audit"),
        anchor="the half-plane preimage exclusion",
        description="reflected preimage of a rotated arc under z1^2 z2, certified in the rp framing",
        coverage=("half-plane",)),
    ScenarioSpec(
        "antidiagonal-level-set", "a00", _ANTI, degree=2, grid=16,
        analyses=("certificate", "primal", "audit"), anchor="the level-set exclusion",
        description="(v, -v) lies in the level set z1 z2 = 1: no positive A_0 annihilator",
        coverage=("level-sets",)),
    ScenarioSpec(
        "cantor-on-antidiagonal", "rp",
        {"kind": "cantor", "depth": 6, "carrier": "negated"}, degree=6,
        analyses=("evidence-table",), params={"depths": [1, 2, 3, 4, 5, 6],
                                              "degrees": [1, 2, 3, 4, 5, 6]},
        tags=(EVIDENCE_TAG,),
        description="middle-thirds Cantor samples on the anti-diagonal, tabulated over (depth, N)",
        coverage=("linear-measure-zero",)),
    ScenarioSpec(
        "single-point", "rp", {"kind": "points", "points": [[0.0, 0.0]]}, degree=1,
        analyses=("rp-check", "primal", "certificate", "audit"),
        description="a unit point mass at (0, 0): every mixed moment has modulus 1"),
    ScenarioSpec(
        "two-point-asymmetric", "rp",
        {"kind": "points", "points": [[0.0, 0.0], [math.pi / 2, math.pi / 3]]}, degree=2,
        analyses=("primal", "certificate", "audit"),
        description="two atoms in general position"),
    ScenarioSpec(
        "product-grid", "rp", {"kind": "grid", "dim": 2}, degree=3, grid=8,
        analyses=("rp-check", "primal", "audit"), claims_orthogonality=True,
        description="the full 8 x 8 grid: the uniform measure kills every non-zero index below 8",
        coverage=("rp-criterion",)),
    ScenarioSpec(
        "random-cloud", "rp", {"kind": "random", "m": 12, "dim": 2}, degree=2, seed=7,
        analyses=("primal", "certificate", "audit"),
        description="12 seeded uniform random points"),
    ScenarioSpec(
        "antidiagonal-l2-density", "a00", _ANTI, degree=7, grid=16,
        analyses=("certificate", "residual-profile"), target=[3, 0],
        anchor={"certificate": "the level-set exclusion",
                "residual-profile": "L2 density of the a00 span"},
        description="distance from z1^3 to span a00_box(N) in L2 of the uniform anti-diagonal measure",
        coverage=("l2-density",)),
    ScenarioSpec(
        "diagonal-annihilator", "a00", _DIAG, degree=5, grid=16,
        analyses=("gen-annihilator",), target=None,
        anchor="the |f - F|^2 construction",
        description="|1 - F|^2 dmu on the uniform diagonal measure, F the projection onto a00_box(5)",
        coverage=("annihilator-generation",)),
    ScenarioSpec(
        "uniform-density-diagonal", "a00", _DIAG, degree=4, grid=16,
        analyses=("best-approx",), target=None, anchor="uniform density",
        description="sup-norm fit of the constant 1 on the diagonal: blocked by a positive annihilator",
        coverage=("uniform-density",)),
    ScenarioSpec(
        "uniform-density-antidiagonal", "a00", _ANTI, degree=4, grid=16,
        analyses=("best-approx",), target=[2, 0], anchor="uniform density",
        description="sup-norm fit of e^{2iv} on the anti-diagonal, represented by z1^3 z2",
        coverage=("uniform-density",)),
]}

COVERAGE_CHECKLIST = ("level-sets", "half-plane", "monomial-arc", "positive-slope",
                      "linear-measure-zero", "l2-density", "annihilator-generation",
                      "uniform-density")


def list_scenarios() -> list[tuple[str, str]]:
    return [(name, spec.description) for name, spec in BUILTINS.items()]


def get_builtin(name: str) -> ScenarioSpec:
    try:
        return BUILTINS[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown builtin {name!r}; see 'scenario list'") from None
