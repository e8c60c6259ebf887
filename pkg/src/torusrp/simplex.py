"""Revised two-phase primal simplex with Bland's anti-cycling rule."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import InvalidInputError

log = logging.getLogger(__name__)

MAX_SIZE = 5000
FEAS_TOL = 1e-9
PIVOT_TOL = 1e-9
# entries below this fraction of the column's largest entry are treated as zero
REL_PIVOT_TOL = 1e-7
COST_TOL = 1e-10
MAX_COST_TOL = 1e-6
# ratios within this relative distance of the minimum count as ties
RATIO_TIE = 1e-12
# consecutive degenerate pivots before pricing falls back to Bland's rule
STALL_PIVOTS = 50

RELATIONS = ("=", ">=", "<=")


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """min (or max) c.x subject to A x (rel) b, with x_j >= 0 or x_j free.

    ``lower[j]`` is 0.0 for a non-negative variable and None for a free one.
    """

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    relations: tuple[str, ...]
    lower: tuple[float | None, ...] | None = None
    maximize: bool = False

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, c.size)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape != (b.size, c.size):
            raise InvalidInputError(
                f"constraint matrix shape {A.shape} inconsistent with "
                f"{b.size} rows and {c.size} variables")
        rel = tuple(self.relations)
        if len(rel) != b.size or any(r not in RELATIONS for r in rel):
            raise InvalidInputError("one relation in {'=', '>=', '<='} is needed per row")
        lower = tuple(self.lower) if self.lower is not None else (0.0,) * c.size
        if len(lower) != c.size or any(lo not in (0.0, None) for lo in lower):
            raise InvalidInputError("variable lower bounds must be 0 or None")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
            raise InvalidInputError("LP data must be finite")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "lower", lower)

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_rows(self) -> int:
        return self.b.size

    def violation(self, x: np.ndarray) -> float:
        """Largest violation of any row or sign constraint at x."""
        x = np.asarray(x, dtype=float)
        r = self.A @ x - self.b
        worst = 0.0
        for ri, rel in zip(r, self.relations):
            if rel == "=":
                worst = max(worst, abs(ri))
            elif rel == ">=":
                worst = max(worst, -ri)
            else:
                worst = max(worst, ri)
        for xj, lo in zip(x, self.lower):
            if lo is not None:
                worst = max(worst, -xj)
        return float(worst)


@dataclass(frozen=True)
class LPSolution:
    status: str  # optimal | infeasible | unbounded | numerical-failure
    x: np.ndarray | None = field(default=None, repr=False)
    objective: float | None = None
    pivots: int = 0
    max_violation: float | None = None
    phase_one_value: float | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Revised:
    """Revised simplex state: the basis is refactorized (LU) at every pivot.

    Refactorizing keeps rounding error from compounding across the long
    degenerate pivot sequences Bland's rule can take.
    """

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: list[int]):
        self.A = A
        self.b = b
        self.basis = list(basis)
        self.pivots = 0
        self.cost = np.zeros(A.shape[1])

    def _factor(self):
        return scipy.linalg.lu_factor(self.A[:, self.basis], check_finite=False)

    def basic_values(self, lu=None) -> np.ndarray:
        lu = lu if lu is not None else self._factor()
        return scipy.linalg.lu_solve(lu, self.b, check_finite=False)

    def run(self, allowed: np.ndarray, limit: int) -> str:
        """Iterate until optimal, unbounded or the pivot limit.

        Pricing is Dantzig's (most negative reduced cost) while pivots make
        progress; after STALL_PIVOTS consecutive degenerate pivots it switches
        to Bland's rule (lowest index entering, lowest basic index among
        ratio ties leaving) until the objective moves again.
        """
        A, cost = self.A, self.cost
        cmax = max(1.0, float(np.abs(cost).max(initial=0.0)))
        tol = COST_TOL
        seen = {frozenset(self.basis)}
        stalled = 0
        while True:
            if self.pivots >= limit:
                return "numerical-failure"
            bland = stalled >= STALL_PIVOTS
            scale = tol * cmax
            lu = self._factor()
            y = scipy.linalg.lu_solve(lu, cost[self.basis], trans=1, check_finite=False)
            d = cost - A.T @ y
            d[self.basis] = 0.0
            cand = np.flatnonzero((d < -scale) & allowed)
            if cand.size == 0:
                return "optimal"
            s = int(cand[0]) if bland else int(cand[np.argmin(d[cand])])
            alpha = scipy.linalg.lu_solve(lu, A[:, s], check_finite=False)
            xb = np.maximum(self.basic_values(lu), 0.0)
            r, step = self._leaving(alpha, xb, bland)
            if r is None:
                return "unbounded"
            self.basis[r] = s
            self.pivots += 1
            stalled = stalled + 1 if step * -d[s] <= FEAS_TOL * cmax else 0
            key = frozenset(self.basis)
            if key in seen:
                # Bland's rule cannot revisit a basis in exact arithmetic, so
                # the reduced costs driving this loop are rounding noise
                if not bland:
                    stalled = STALL_PIVOTS
                elif tol >= MAX_COST_TOL:
                    return "numerical-failure"
                else:
                    tol *= 10.0
                seen.clear()
            seen.add(key)

    def _leaving(self, alpha: np.ndarray, xb: np.ndarray, bland: bool):
        """Minimum-ratio row, ignoring pivots that are tiny relative to the column.

        Ties (within rounding) go to the lowest basic index under Bland's rule
        and to the largest pivot otherwise. Returns (row, step) or (None, inf).
        """
        floor = max(PIVOT_TOL, REL_PIVOT_TOL * float(np.abs(alpha).max()))
        rows = np.flatnonzero(alpha > floor)
        if rows.size == 0:
            return None, math.inf
        ratios = xb[rows] / alpha[rows]
        best = ratios.min()
        ties = rows[ratios <= best + RATIO_TIE * max(1.0, best)]
        if bland:
            r = min(ties, key=lambda i: self.basis[i])
        else:
            r = ties[np.argmax(alpha[ties])]
        return int(r), float(best)

    def values(self, n: int) -> np.ndarray:
        x = np.zeros(n)
        x[self.basis] = self.basic_values()
        return x

    def row(self, r: int) -> np.ndarray:
        """Row r of B^{-1} A."""
        e = np.zeros(len(self.basis))
        e[r] = 1.0
        lu = self._factor()
        return scipy.linalg.lu_solve(lu, e, trans=1, check_finite=False) @ self.A


def _standard_form(lp: LinearProgram):
    """Columns: structural (free vars split), slacks/surpluses, artificials."""
    cols = []
    cost = []
    back: list[tuple[int, float]] = []
    for j in range(lp.n_vars):
        cols.append(lp.A[:, j])
        cost.append(lp.c[j])
        back.append((j, 1.0))
        if lp.lower[j] is None:
            cols.append(-lp.A[:, j])
            cost.append(-lp.c[j])
            back.append((j, -1.0))
    n_struct = len(cols)
    A = np.column_stack(cols) if cols else np.zeros((lp.n_rows, 0))
    A = A.copy()
    b = lp.b.copy()
    rel = list(lp.relations)
    for i in range(lp.n_rows):
        flip = (rel[i] == ">=" and b[i] <= 0) or (rel[i] == "<=" and b[i] < 0) or (
            rel[i] == "=" and b[i] < 0)
        if flip:
            A[i] *= -1.0
            b[i] *= -1.0
            rel[i] = {"=": "=", ">=": "<=", "<=": ">="}[rel[i]]
    m = lp.n_rows
    extra = []
    basis = [-1] * m
    for i in range(m):
        if rel[i] in ("<=", ">="):
            e = np.zeros(m)
            e[i] = 1.0 if rel[i] == "<=" else -1.0
            extra.append(e)
            if rel[i] == "<=":
                basis[i] = n_struct + len(extra) - 1
    n_slack = len(extra)
    art_rows = [i for i in range(m) if basis[i] < 0]
    for k, i in enumerate(art_rows):
        e = np.zeros(m)
        e[i] = 1.0
        extra.append(e)
        basis[i] = n_struct + n_slack + k
    if extra:
        A = np.hstack([A, np.column_stack(extra)])
    cost = np.concatenate([np.array(cost, dtype=float), np.zeros(len(extra))])
    n_real = n_struct + n_slack
    return A, b, basis, cost, n_real, back


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve lp by two-phase primal simplex with Bland's rule.

    Infeasibility is declared when the phase-one optimum (total artificial
    mass) exceeds 1e-9. Exceeding 10*(rows+cols)^2 pivots is reported as
    ``numerical-failure``.
    """
    if lp.n_vars > MAX_SIZE or lp.n_rows > MAX_SIZE:
        raise InvalidInputError(
            f"LP of size {lp.n_rows}x{lp.n_vars} exceeds the {MAX_SIZE} row/variable guard")
    sense = -1.0 if lp.maximize else 1.0
    A, b, basis, cost, n_real, back = _standard_form(lp)
    m, ncol = A.shape
    limit = 10 * (lp.n_rows + lp.n_vars) ** 2 + 10
    tab = _Revised(A, b, basis)

    phase1 = np.zeros(ncol)
    phase1[n_real:] = 1.0
    allowed = np.ones(ncol, dtype=bool)
    p1 = 0.0
    if ncol > n_real:
        tab.cost = phase1
        status = tab.run(allowed, limit)
        if status == "numerical-failure":
            return LPSolution("numerical-failure", pivots=tab.pivots)
        p1 = float(tab.values(ncol)[n_real:].sum())
        if p1 > FEAS_TOL:
            return LPSolution("infeasible", pivots=tab.pivots, phase_one_value=p1)
        _drive_out_artificials(tab, n_real)
        tab.A = tab.A[:, :n_real]
        ncol = n_real

    tab.cost = sense * cost[:ncol]
    status = tab.run(np.ones(ncol, dtype=bool), limit)
    if status != "optimal":
        return LPSolution(status, pivots=tab.pivots, phase_one_value=p1)

    xs = _refined_values(tab, ncol)
    x = np.zeros(lp.n_vars)
    for (j, sgn), v in zip(back, xs[:len(back)]):
        x[j] += sgn * v
    viol = lp.violation(x)
    log.debug("simplex: %d pivots, violation %.3g", tab.pivots, viol)
    return LPSolution("optimal", x=x, objective=float(lp.c @ x), pivots=tab.pivots,
                      max_violation=viol, phase_one_value=p1)


def _drive_out_artificials(tab: _Revised, n_real: int):
    r = 0
    while r < len(tab.basis):
        if tab.basis[r] < n_real:
            r += 1
            continue
        row = tab.row(r)[:n_real]
        row[[j for j in tab.basis if j < n_real]] = 0.0
        nz = np.flatnonzero(np.abs(row) > PIVOT_TOL)
        if nz.size:
            tab.basis[r] = int(nz[0])
            tab.pivots += 1
            r += 1
        else:
            # redundant equality row
            tab.A = np.delete(tab.A, r, axis=0)
            tab.b = np.delete(tab.b, r)
            del tab.basis[r]


def _refined_values(tab: _Revised, ncol: int) -> np.ndarray:
    x = tab.values(ncol)
    x[(x < 0) & (x > -FEAS_TOL)] = 0.0
    return x


def lp_from_rows(c: Sequence[float], rows: list[tuple[Sequence[float], str, float]],
                 lower=None, maximize: bool = False) -> LinearProgram:
    """Convenience constructor from (coefficients, relation, rhs) triples."""
    A = np.array([r[0] for r in rows], dtype=float).reshape(len(rows), len(c))
    return LinearProgram(np.asarray(c, dtype=float), A, [r[2] for r in rows],
                         tuple(r[1] for r in rows), lower, maximize)
