"""Positive annihilating measures on finite point sets and their Farkas duals.

For a point set S, a degree N and a framing, the primal program looks for a
probability vector w on S whose moments vanish on the framing's index set:

* ``rp``  -- mixed indices in the box |k_j| <= N, one per conjugate pair
  (first non-zero component positive);
* ``a00`` -- all k with every component in [1, N].

The dual program maximizes epsilon subject to Re f(p) >= epsilon on S, over
polynomials f = sum c_k z^k on the same index set with
sum |Re c_k| + |Im c_k| <= 1. By LP duality its optimum equals the smallest
achievable max-moment residual, so exactly one of the two succeeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    AtomicMeasure,
    a00_defect,
    box_indices,
    mixed_indices,
    points_array,
    rp_defect,
)
from .errors import InvalidInputError, NumericalFailure
from .poly import AnalyticPolynomial, TrigPolynomial
from .simplex import LinearProgram, solve_lp

FRAMINGS = ("rp", "a00")

CERTIFICATE_THRESHOLD = 1e-8
WITNESS_TOL = 1e-8

SCOPE_NOTE = (
    "grid-level statement: a feasible witness is evidence for existence at this "
    "truncation only; infeasibility with a certificate is rigorous for measures "
    "supported on exactly these points")


def _check_framing(framing: str):
    if framing not in FRAMINGS:
        raise InvalidInputError(f"framing must be one of {FRAMINGS}, got {framing!r}")


def framing_indices(dim: int, N: int, framing: str) -> np.ndarray:
    """Index set constrained by a framing, as an integer array of shape (K, dim)."""
    _check_framing(framing)
    if int(N) != N or N < 1:
        raise InvalidInputError("degree must be a positive integer")
    if framing == "a00":
        return box_indices(dim, 1, int(N))
    K = mixed_indices(dim, int(N))
    first = np.array([row[np.flatnonzero(row)[0]] for row in K]) if len(K) else np.zeros(0)
    return K[first > 0]


def framing_defect(mu: AtomicMeasure, N: int, framing: str) -> float:
    _check_framing(framing)
    return rp_defect(mu, N) if framing == "rp" else a00_defect(mu, N)


def _phase_matrix(P: np.ndarray, K: np.ndarray) -> np.ndarray:
    """E[i, k] = exp(i <k, p_i>)."""
    return np.exp(1j * (P @ K.T.astype(float)))


def _resolve(S, N, framing, indices):
    P = points_array(S)
    if indices is None:
        K = framing_indices(P.shape[1], N, framing)
    else:
        _check_framing(framing)
        K = np.asarray(indices, dtype=np.int64).reshape(-1, P.shape[1])
    return P, K


@dataclass(frozen=True)
class FeasibilityReport:
    framing: str
    degree: int
    grid_size: int
    status: str  # feasible | infeasible | numerical-failure
    weights: list[float] | None = field(default=None, repr=False)
    max_residual: float | None = None
    pivots: int = 0
    phase_one_value: float | None = None
    scope: str = SCOPE_NOTE
    points: list[list[float]] | None = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def witness(self) -> AtomicMeasure:
        if not self.feasible:
            raise InvalidInputError(f"no witness: primal status is {self.status}")
        P = np.array(self.points)
        return AtomicMeasure(P.shape[1], P, self.weights)

    def to_dict(self) -> dict:
        return {
            "framing": self.framing,
            "degree": self.degree,
            "grid_size": self.grid_size,
            "status": self.status,
            "weights": self.weights,
            "max_residual": self.max_residual,
            "pivots": self.pivots,
            "phase_one_value": self.phase_one_value,
            "scope": self.scope,
        }


def primal_positive_annihilator(S, N: int, framing: str = "rp",
                                indices=None) -> FeasibilityReport:
    """Search for w >= 0, sum w = 1 on S with vanishing framing moments.

    ``indices`` overrides the framing's index set (the framing tag is kept
    for reporting).
    """
    P, K = _resolve(S, N, framing, indices)
    m = P.shape[0]
    E = _phase_matrix(P, K)
    A = np.vstack([np.ones((1, m)), E.real.T, E.imag.T])
    b = np.zeros(A.shape[0])
    b[0] = 1.0
    lp = LinearProgram(np.zeros(m), A, b, ("=",) * A.shape[0])
    sol = solve_lp(lp)
    common = dict(framing=framing, degree=int(N), grid_size=m, pivots=sol.pivots,
                  phase_one_value=sol.phase_one_value)
    if sol.status == "infeasible":
        return FeasibilityReport(status="infeasible", **common)
    if sol.status != "optimal":
        return FeasibilityReport(status="numerical-failure", **common)
    w = np.maximum(sol.x, 0.0)
    residual = float(np.abs(w @ E).max()) if K.shape[0] else 0.0
    if residual > WITNESS_TOL or abs(w.sum() - 1.0) > 1e-9:
        return FeasibilityReport(status="numerical-failure", max_residual=residual, **common)
    return FeasibilityReport(status="feasible", weights=[float(x) for x in w],
                             max_residual=residual, points=P.tolist(), **common)


@dataclass(frozen=True)
class Certificate:
    """Half-plane certificate: Re f(p) >= epsilon > 0 for every p in S.

    ``trig`` is f in the coordinates of S. In the ``rp`` framing its
    monomials are mixed; ``polynomial`` then holds the same coefficients with
    the last exponent sign-flipped, i.e. the analytic polynomial whose values
    on T(S) equal those of ``trig`` on S (None when the flip is not analytic,
    which happens for n > 2). In the ``a00`` framing both fields coincide.
    """

    framing: str
    degree: int
    epsilon: float
    trig: TrigPolynomial
    polynomial: AnalyticPolynomial | None
    margins: list[float] = field(repr=False)
    pivots: int = 0

    @property
    def min_margin(self) -> float:
        return min(self.margins)

    def evaluate(self, points) -> np.ndarray:
        return self.trig.evaluate(points)

    def pair(self, mu: AtomicMeasure) -> complex:
        """Integral of the certificate function against mu (in S-coordinates)."""
        from .poly import pair_integral

        return pair_integral(self.trig, mu)

    def to_dict(self) -> dict:
        from .io import poly_to_dict

        return {
            "framing": self.framing,
            "degree": self.degree,
            "epsilon": self.epsilon,
            "min_margin": self.min_margin,
            "coefficient_l1": self.trig.coefficient_l1(),
            "trig": poly_to_dict(self.trig),
            "polynomial": None if self.polynomial is None else poly_to_dict(self.polynomial),
            "margins": list(self.margins),
            "pivots": self.pivots,
        }


def dual_halfplane_certificate(S, N: int, framing: str = "rp",
                               indices=None) -> Certificate | None:
    """Maximize the half-plane margin over polynomials on the framing's indices.

    Returns None when the optimal margin is <= 1e-8.
    """
    P, K = _resolve(S, N, framing, indices)
    m, nk = P.shape[0], K.shape[0]
    if nk == 0:
        return None
    E = _phase_matrix(P, K)
    C, Sn = E.real, E.imag
    # variables: a+, a-, b+, b-, eps;  Re((a + ib) e^{it}) = a cos t - b sin t
    rows = np.hstack([C, -C, -Sn, Sn, -np.ones((m, 1))])
    budget = np.append(np.ones(4 * nk), 0.0)
    A = np.vstack([rows, budget])
    b = np.append(np.zeros(m), 1.0)
    c = np.zeros(4 * nk + 1)
    c[-1] = 1.0
    lp = LinearProgram(c, A, b, (">=",) * m + ("<=",), maximize=True)
    sol = solve_lp(lp)
    if sol.status != "optimal":
        raise NumericalFailure(f"certificate LP ended with status {sol.status}")
    x = sol.x
    eps = float(x[-1])
    if eps <= CERTIFICATE_THRESHOLD:
        return None
    a = x[:nk] - x[nk:2 * nk]
    bb = x[2 * nk:3 * nk] - x[3 * nk:4 * nk]
    coeffs = {tuple(int(v) for v in k): complex(ar, bi) for k, ar, bi in zip(K, a, bb)}
    trig = TrigPolynomial(P.shape[1], coeffs)
    margins = np.real(trig.evaluate(P))
    # report what the polynomial actually certifies on S
    eps = min(eps, float(margins.min()))
    if framing == "a00":
        poly = AnalyticPolynomial(trig.dim, trig.coefficients)
    else:
        flipped = {k[:-1] + (-k[-1],): c for k, c in trig.coefficients.items()}
        ok = all(min(k) >= 0 for k in flipped)
        poly = AnalyticPolynomial(trig.dim, flipped) if ok else None
    return Certificate(framing=framing, degree=int(N), epsilon=eps, trig=trig,
                       polynomial=poly, margins=[float(v) for v in margins],
                       pivots=sol.pivots)


@dataclass(frozen=True)
class AuditRecord:
    framing: str
    degree: int
    grid_size: int
    primal_status: str
    certificate_epsilon: float | None
    exclusive: bool
    verdict: str
    primal: FeasibilityReport = field(repr=False, default=None)
    certificate: Certificate | None = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "framing": self.framing,
            "degree": self.degree,
            "grid_size": self.grid_size,
            "primal_status": self.primal_status,
            "certificate_epsilon": self.certificate_epsilon,
            "exclusive": self.exclusive,
            "verdict": self.verdict,
        }


def duality_audit(S, N: int, framing: str = "rp") -> AuditRecord:
    """Run primal and dual on the same data and check that exactly one succeeds."""
    primal = primal_positive_annihilator(S, N, framing)
    try:
        cert = dual_halfplane_certificate(S, N, framing)
        dual_failed = False
    except NumericalFailure:
        cert, dual_failed = None, True
    has_cert = cert is not None
    if primal.status == "numerical-failure" or dual_failed:
        exclusive, verdict = False, "solver failure"
    elif primal.feasible and has_cert:
        exclusive, verdict = False, "violation: both feasible witness and certificate"
    elif not primal.feasible and not has_cert:
        exclusive, verdict = False, "violation: neither witness nor certificate"
    else:
        exclusive = True
        verdict = "exclusive: feasible witness" if primal.feasible else "exclusive: certificate"
    return AuditRecord(framing=framing, degree=int(N), grid_size=primal.grid_size,
                       primal_status=primal.status,
                       certificate_epsilon=cert.epsilon if has_cert else None,
                       exclusive=exclusive, verdict=verdict, primal=primal, certificate=cert)
