"""Trigonometric and analytic polynomials restricted to the torus."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import TWO_PI, AtomicMeasure, as_index, moments_at, points_array
from .errors import InvalidInputError

NO_ANNIHILATOR_TAG = "no-positive-annihilator-supported-here"


class TrigPolynomial:
    """Finite sum of c_k z^k over integer multi-indices k (negative entries allowed).

    Coefficients that are exactly zero are dropped.
    """

    __slots__ = ("dim", "_coeffs")

    def __init__(self, dim: int, coefficients: Mapping | None = None):
        if int(dim) < 1:
            raise InvalidInputError("dimension must be >= 1")
        self.dim = int(dim)
        coeffs: dict[tuple[int, ...], complex] = {}
        for k, c in (coefficients or {}).items():
            k = as_index(k)
            if len(k) != self.dim:
                raise InvalidInputError(f"index {k} does not have dimension {self.dim}")
            c = complex(c)
            if not cmath.isfinite(c):
                raise InvalidInputError("coefficients must be finite")
            c = coeffs.get(k, 0j) + c
            coeffs[k] = c
        self._coeffs = {k: c for k, c in sorted(coeffs.items()) if c != 0}
        self._validate()

    def _validate(self):
        pass

    @classmethod
    def monomial(cls, k, c: complex = 1.0):
        k = as_index(k)
        return cls(len(k), {k: c})

    @classmethod
    def constant(cls, dim: int, c: complex = 1.0):
        return cls(dim, {(0,) * dim: c})

    @property
    def coefficients(self) -> dict[tuple[int, ...], complex]:
        return dict(self._coeffs)

    @property
    def indices(self) -> list[tuple[int, ...]]:
        return list(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Max over stored indices of max_j |k_j| (0 for the zero polynomial)."""
        return max((max(abs(x) for x in k) for k in self._coeffs), default=0)

    @property
    def is_analytic(self) -> bool:
        return all(min(k) >= 0 for k in self._coeffs)

    @property
    def is_a00(self) -> bool:
        return all(min(k) >= 1 for k in self._coeffs)

    def coefficient_l1(self) -> float:
        """Sum of |Re c| + |Im c| over the coefficients."""
        return float(sum(abs(c.real) + abs(c.imag) for c in self._coeffs.values()))

    def scaled(self, c: complex):
        return type(self)(self.dim, {k: c * v for k, v in self._coeffs.items()})

    def _arrays(self):
        if not self._coeffs:
            return np.zeros((0, self.dim)), np.zeros(0, dtype=complex)
        K = np.array(list(self._coeffs), dtype=float)
        C = np.array(list(self._coeffs.values()), dtype=complex)
        return K, C

    def evaluate(self, points) -> np.ndarray:
        """Values at a batch of torus points, shape (m,)."""
        P = points_array(points)
        if P.shape[1] != self.dim:
            raise InvalidInputError(
                f"dimension mismatch: polynomial has {self.dim}, points have {P.shape[1]}")
        K, C = self._arrays()
        if C.size == 0:
            return np.zeros(P.shape[0], dtype=complex)
        return np.exp(1j * (P @ K.T)) @ C

    def __call__(self, point) -> complex:
        return complex(self.evaluate([point])[0])

    def __eq__(self, other):
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self.dim == other.dim and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.dim, tuple(self._coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{k}: {c}" for k, c in self._coeffs.items())
        return f"{type(self).__name__}(dim={self.dim}, {{{terms}}})"


class AnalyticPolynomial(TrigPolynomial):
    """Polynomial in z_1..z_n with non-negative exponents (a member of A(D^n))."""

    __slots__ = ()

    def _validate(self):
        bad = [k for k in self._coeffs if min(k) < 0]
        if bad:
            raise InvalidInputError(f"analytic polynomial has negative exponents {bad[:3]}")


def eval_poly(f: TrigPolynomial, p) -> complex:
    """Value of f at a single torus point."""
    return f(p)


def pair_integral(f: TrigPolynomial, mu: AtomicMeasure) -> complex:
    """Integral of f against mu, computed coefficientwise from moments."""
    if f.dim != mu.dim:
        raise InvalidInputError(f"dimension mismatch: polynomial {f.dim}, measure {mu.dim}")
    K, C = f._arrays()
    if C.size == 0:
        return 0j
    return complex(C @ moments_at(mu, K.astype(np.int64)))


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {w : Re(e^{-i theta} w) >= epsilon}."""

    epsilon: float
    theta: float = 0.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InvalidInputError("half-plane offset epsilon must be > 0")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    def margin(self, w) -> np.ndarray:
        return np.real(np.exp(-1j * self.theta) * np.asarray(w))

    def contains(self, w) -> bool:
        return bool(self.margin(w) >= self.epsilon)


@dataclass(frozen=True)
class CoverReport:
    margins: list[float] = field(repr=False)
    passed: list[bool] = field(repr=False)
    halfplane: HalfPlane
    covered: bool
    min_margin: float
    conclusion: str | None = None

    @property
    def violations(self) -> list[int]:
        return [i for i, ok in enumerate(self.passed) if not ok]

    def to_dict(self) -> dict:
        return {
            "epsilon": self.halfplane.epsilon,
            "theta": self.halfplane.theta,
            "covered": self.covered,
            "min_margin": self.min_margin,
            "conclusion": self.conclusion,
            "margins": list(self.margins),
            "passed": list(self.passed),
        }


def _margins(f: TrigPolynomial, S, theta: float) -> np.ndarray:
    return np.real(np.exp(-1j * theta) * f.evaluate(S))


def halfplane_cover_check(f: TrigPolynomial, S, H: HalfPlane) -> CoverReport:
    """Check whether f maps every point of S into the half-plane H.

    A covered set cannot carry a non-zero positive measure annihilating
    A_0(D^n), because Re(e^{-i theta} * integral f dmu) >= epsilon * mu(T^n).
    """
    if not f.is_a00:
        raise InvalidInputError("half-plane cover check requires f with all exponents >= 1")
    margins = _margins(f, S, H.theta)
    passed = margins >= H.epsilon
    covered = bool(passed.all())
    return CoverReport(
        margins=[float(x) for x in margins],
        passed=[bool(x) for x in passed],
        halfplane=H,
        covered=covered,
        min_margin=float(margins.min()),
        conclusion=NO_ANNIHILATOR_TAG if covered else None,
    )


def min_margin(f: TrigPolynomial, S, theta: float = 0.0) -> float:
    """Largest epsilon for which S lies in f^{-1}(H_epsilon^theta)."""
    return float(_margins(f, S, theta).min())


def rotation_absorbed(f: TrigPolynomial, theta: float) -> TrigPolynomial:
    return f.scaled(complex(math.cos(theta), -math.sin(theta)))
