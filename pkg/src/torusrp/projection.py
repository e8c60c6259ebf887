"""Orthogonal projections in L2(mu) onto spans of monomials, and related tools.

All inner products are exact finite sums over the atoms of a positive
atomic measure mu: <g, h> = sum_i w_i g(p_i) conj(h(p_i)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import AtomicMeasure, a00_defect, box_indices, points_array
from .errors import InvalidInputError, NumericalFailure
from .poly import AnalyticPolynomial, TrigPolynomial
from .simplex import LinearProgram, solve_lp

ILL_CONDITIONED = 1e12
VANISHING_RESIDUAL = 1e-10
# relative singular-value cutoff for the weighted least-squares solve
RANK_RCOND = 1e-10
OCTAGON_FACTOR = 1.0 / math.cos(math.pi / 8)


@dataclass(frozen=True)
class MonomialBasis:
    dim: int
    indices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        idx = tuple(tuple(int(x) for x in k) for k in self.indices)
        if any(len(k) != self.dim for k in idx):
            raise InvalidInputError("basis index dimension mismatch")
        if len(set(idx)) != len(idx):
            raise InvalidInputError("basis indices must be pairwise distinct")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def a00_box(cls, dim: int, N: int) -> "MonomialBasis":
        """All k with every component in [1, N]."""
        return cls.sk_box(dim, 1, N)

    @classmethod
    def sk_box(cls, dim: int, k0: int, N: int) -> "MonomialBasis":
        """All k with every component in [k0, N]."""
        if N < k0:
            raise InvalidInputError("empty index box")
        return cls(dim, tuple(map(tuple, box_indices(dim, int(k0), int(N)).tolist())))

    def __len__(self):
        return len(self.indices)

    @property
    def is_analytic(self) -> bool:
        return all(min(k) >= 0 for k in self.indices)

    def design(self, points) -> np.ndarray:
        """V[i, a] = z^{k_a} evaluated at point i."""
        P = points_array(points)
        if P.shape[1] != self.dim:
            raise InvalidInputError("points and basis differ in dimension")
        K = np.array(self.indices, dtype=float).reshape(-1, self.dim)
        return np.exp(1j * (P @ K.T))

    def combination(self, coefficients) -> TrigPolynomial:
        cls = AnalyticPolynomial if self.is_analytic else TrigPolynomial
        return cls(self.dim, dict(zip(self.indices, np.asarray(coefficients, dtype=complex))))


def _require_positive(mu: AtomicMeasure):
    if not mu.is_positive:
        raise InvalidInputError("an L2(mu) inner product needs a positive non-zero measure")


def gram_matrix(basis: MonomialBasis, mu: AtomicMeasure) -> np.ndarray:
    """G[a, b] = moment(mu, k_a - k_b)."""
    _require_positive(mu)
    if basis.dim != mu.dim:
        raise InvalidInputError("basis and measure differ in dimension")
    V = basis.design(mu.angles)
    w = mu.weights.real
    return (V.T * w) @ V.conj()


def l2_norm(g: TrigPolynomial, mu: AtomicMeasure) -> float:
    _require_positive(mu)
    v = g.evaluate(mu.angles)
    return float(np.sqrt(mu.weights.real @ np.abs(v) ** 2))


def _describe(f: TrigPolynomial) -> str:
    if f.is_zero:
        return "0"
    return " + ".join(f"({c.real:.6g}{c.imag:+.6g}j)*z^{list(k)}" for k, c in f.coefficients.items())


@dataclass(frozen=True)
class ProjectionResult:
    basis: MonomialBasis = field(repr=False)
    coefficients: np.ndarray = field(repr=False)
    residual_norm: float
    projection_norm: float
    target_norm: float
    gram_condition: float
    target: str
    ill_conditioned: bool = False

    def polynomial(self) -> TrigPolynomial:
        return self.basis.combination(self.coefficients)

    def to_dict(self) -> dict:
        cond = self.gram_condition
        return {
            "target": self.target,
            "basis": [list(k) for k in self.basis.indices],
            "coefficients": [{"re": float(c.real), "im": float(c.imag)} for c in self.coefficients],
            "residual_norm": self.residual_norm,
            "projection_norm": self.projection_norm,
            "target_norm": self.target_norm,
            "gram_condition": cond if math.isfinite(cond) else None,
            "ill_conditioned": self.ill_conditioned,
        }


def project(target: TrigPolynomial, basis: MonomialBasis, mu: AtomicMeasure) -> ProjectionResult:
    """Orthogonal projection of target onto span{z^k : k in basis} in L2(mu).

    The normal equations are solved in their equivalent weighted
    least-squares form with a column-pivoted QR, which returns the
    minimum-norm coefficient vector when the Gram matrix is singular.
    """
    _require_positive(mu)
    if target.dim != mu.dim or basis.dim != mu.dim:
        raise InvalidInputError("target, basis and measure must share a dimension")
    w = mu.weights.real
    sw = np.sqrt(w)
    t = target.evaluate(mu.angles)
    V = basis.design(mu.angles)
    if len(basis):
        coef, *_ = scipy.linalg.lstsq(sw[:, None] * V, sw * t, cond=RANK_RCOND,
                                      lapack_driver="gelsy")
        G = (V.T * w) @ V.conj()
        s = np.linalg.svd(G, compute_uv=False)
        cond = float(s[0] / s[-1]) if s[-1] > 0 else math.inf
    else:
        coef, cond = np.zeros(0, dtype=complex), 1.0
    fitted = V @ coef
    return ProjectionResult(
        basis=basis,
        coefficients=coef,
        residual_norm=float(np.sqrt(w @ np.abs(t - fitted) ** 2)),
        projection_norm=float(np.sqrt(w @ np.abs(fitted) ** 2)),
        target_norm=float(np.sqrt(w @ np.abs(t) ** 2)),
        gram_condition=cond,
        target=_describe(target),
        ill_conditioned=cond > ILL_CONDITIONED,
    )


def residual_profile(target: TrigPolynomial, mu: AtomicMeasure, N_max: int) -> list[tuple[int, float]]:
    """Distance from target to span of a00_box(N) in L2(mu), for N = 1..N_max."""
    if int(N_max) != N_max or N_max < 1:
        raise InvalidInputError("N_max must be a positive integer")
    return [(N, project(target, MonomialBasis.a00_box(mu.dim, N), mu).residual_norm)
            for N in range(1, int(N_max) + 1)]


@dataclass(frozen=True)
class AnnihilatorResult:
    """Output of the |f - F|^2 dmu construction.

    ``certified_degree`` is N - deg(f): the largest degree up to which
    multiplying the orthogonality relations by monomials stays inside the
    projection box. ``defect`` is the measured a00 defect at that degree.
    """

    measure: AtomicMeasure = field(repr=False)
    flag: str | None
    residual_norm: float
    degree: int
    certified_degree: int | None
    defect: float | None
    projection: ProjectionResult = field(repr=False)

    def to_dict(self) -> dict:
        from .io import measure_to_dict

        return {
            "flag": self.flag,
            "residual_norm": self.residual_norm,
            "degree": self.degree,
            "certified_degree": self.certified_degree,
            "defect": self.defect,
            "mass": self.measure.mass.real,
            "measure": measure_to_dict(self.measure),
        }


def generate_annihilator(f: TrigPolynomial, mu: AtomicMeasure, N: int) -> AnnihilatorResult:
    """Build the positive measure |f - F|^2 dmu with F the projection of f onto a00_box(N)."""
    _require_positive(mu)
    if f.is_zero:
        raise InvalidInputError("f must not be identically zero")
    if not f.is_analytic:
        raise InvalidInputError("f must have non-negative exponents")
    if int(N) != N or N < 1:
        raise InvalidInputError("degree must be a positive integer")
    N = int(N)
    res = project(f, MonomialBasis.a00_box(mu.dim, N), mu)
    n_cert = N - f.degree
    n_cert = n_cert if n_cert >= 1 else None
    if res.residual_norm <= VANISHING_RESIDUAL:
        return AnnihilatorResult(AtomicMeasure.zero(mu.dim), "vanishing-residual",
                                 res.residual_norm, N, n_cert, None, res)
    gap = f.evaluate(mu.angles) - res.basis.design(mu.angles) @ res.coefficients
    out = mu.with_weights(mu.weights.real * np.abs(gap) ** 2)
    defect = a00_defect(out, n_cert) if n_cert is not None else None
    return AnnihilatorResult(out, None, res.residual_norm, N, n_cert, defect, res)


@dataclass(frozen=True)
class BestApproximation:
    """Sup-norm fit of target values on S by the span of a monomial basis.

    ``value`` is the true max modulus of the returned residual; it lies in
    [E, OCTAGON_FACTOR * E] where E is the exact minimax error. ``lp_bound``
    is the optimum of the octagonal LP relaxation (a lower bound on E).
    """

    value: float
    lp_bound: float
    polynomial: TrigPolynomial
    residuals: np.ndarray = field(repr=False)
    factor: float = OCTAGON_FACTOR
    pivots: int = 0

    def to_dict(self) -> dict:
        from .io import poly_to_dict

        return {
            "value": self.value,
            "lp_bound": self.lp_bound,
            "factor": self.factor,
            "polynomial": poly_to_dict(self.polynomial),
            "pivots": self.pivots,
        }


def uniform_best_approx(values, S, basis: MonomialBasis) -> BestApproximation:
    """Minimize max_p |values(p) - f(p)| over f in span(basis), as an LP.

    |r| is replaced by max_d Re(e^{-i pi d/4} r) over 8 directions.
    """
    v = np.asarray(values, dtype=complex).reshape(-1)
    P = points_array(S)
    if v.size != P.shape[0]:
        raise InvalidInputError("one target value is needed per point")
    V = basis.design(P)
    m, nb = V.shape
    rows, rhs = [], []
    for d in range(8):
        u = np.exp(-1j * math.pi * d / 4)
        uV = u * V
        # -Re(u V) x + Im(u V) y - t <= -Re(u v)
        rows.append(np.hstack([-uV.real, uV.imag, -np.ones((m, 1))]))
        rhs.append(-(u * v).real)
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    c = np.zeros(2 * nb + 1)
    c[-1] = 1.0
    lower = (None,) * (2 * nb) + (0.0,)
    sol = solve_lp(LinearProgram(c, A, b, ("<=",) * A.shape[0], lower))
    if sol.status != "optimal":
        raise NumericalFailure(f"best-approximation LP ended with status {sol.status}")
    coef = sol.x[:nb] + 1j * sol.x[nb:2 * nb]
    r = v - V @ coef
    return BestApproximation(value=float(np.abs(r).max()), lp_bound=float(sol.x[-1]),
                             polynomial=basis.combination(coef), residuals=r,
                             pivots=sol.pivots)
