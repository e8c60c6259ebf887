"""Atomic measures on the torus T^n and their Fourier moments.

Points of T^n are stored by their angles in [0, 2*pi); a point with angles
``(a_1, ..., a_n)`` is the image ``(e^{i a_1}, ..., e^{i a_n})`` of the
covering map. Every measure is a finite sum of weighted point masses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError

TWO_PI = 2.0 * math.pi

DEFAULT_DEFECT_TOL = 1e-8

# atoms x indices per exp() block in moment batches
_BLOCK = 1 << 21


def normalize_angles(angles) -> np.ndarray:
    """Reduce angles modulo 2*pi into the half-open interval [0, 2*pi)."""
    a = np.mod(np.asarray(angles, dtype=float), TWO_PI)
    # np.mod(-tiny, 2pi) rounds up to exactly 2pi
    a[a >= TWO_PI] = 0.0
    return a


@dataclass(frozen=True)
class TorusPoint:
    angles: tuple[float, ...]

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.angles, dtype=float))
        if a.ndim != 1 or a.size < 1:
            raise InvalidInputError("a torus point needs at least one angle")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("angles must be finite")
        object.__setattr__(self, "angles", tuple(float(x) for x in normalize_angles(a)))

    @property
    def dim(self) -> int:
        return len(self.angles)

    def to_complex(self) -> np.ndarray:
        return np.exp(1j * np.asarray(self.angles))


@dataclass(frozen=True)
class MultiIndex:
    k: tuple[int, ...]

    def __post_init__(self):
        if any(int(x) != x for x in self.k):
            raise InvalidInputError("multi-index entries must be integers")
        k = tuple(int(x) for x in self.k)
        if not k:
            raise InvalidInputError("empty multi-index")
        object.__setattr__(self, "k", k)

    @property
    def dim(self) -> int:
        return len(self.k)

    @property
    def is_mixed(self) -> bool:
        return any(x > 0 for x in self.k) and any(x < 0 for x in self.k)

    @property
    def is_a00(self) -> bool:
        return all(x >= 1 for x in self.k)

    @property
    def is_analytic(self) -> bool:
        return all(x >= 0 for x in self.k)

    def __neg__(self) -> "MultiIndex":
        return MultiIndex(tuple(-x for x in self.k))


def as_index(k) -> tuple[int, ...]:
    if isinstance(k, MultiIndex):
        return k.k
    return MultiIndex(tuple(np.atleast_1d(k).tolist())).k


def points_array(points, allow_empty: bool = False) -> np.ndarray:
    """Stack a point list (TorusPoints or angle sequences) into an (m, n) array."""
    if isinstance(points, np.ndarray):
        arr = np.array(points, dtype=float, ndmin=2)
    else:
        rows = [p.angles if isinstance(p, TorusPoint) else np.atleast_1d(p) for p in points]
        if not rows:
            if allow_empty:
                return np.zeros((0, 0))
            raise InvalidInputError("point list is empty")
        dims = {len(r) for r in rows}
        if len(dims) != 1:
            raise InvalidInputError(f"points have mixed dimensions {sorted(dims)}")
        arr = np.array(rows, dtype=float, ndmin=2)
    if arr.shape[0] == 0 and not allow_empty:
        raise InvalidInputError("point list is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("angles must be finite")
    return normalize_angles(arr)


def to_points(arr: np.ndarray) -> list[TorusPoint]:
    return [TorusPoint(tuple(row)) for row in np.asarray(arr)]


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finitely supported complex measure sum_i w_i * delta_{p_i} on T^n.

    ``angles`` has shape (m, dim) and ``weights`` shape (m,). Duplicate
    points are kept as separate atoms.
    """

    dim: int
    angles: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InvalidInputError("dimension must be >= 1")
        w = np.array(self.weights, dtype=complex).reshape(-1)
        a = np.array(self.angles, dtype=float)
        if a.size == 0:
            a = np.zeros((0, int(self.dim)))
        elif a.ndim == 1:
            a = a.reshape(-1, int(self.dim)) if int(self.dim) == 1 else a[None, :]
        if a.shape[1] != int(self.dim):
            raise InvalidInputError(
                f"atom points have dimension {a.shape[1]}, expected {self.dim}")
        if a.shape[0] != w.shape[0]:
            raise InvalidInputError("number of angles rows and weights differ")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(w))):
            raise InvalidInputError("angles and weights must be finite")
        a = normalize_angles(a)
        a.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple], dim: int | None = None) -> "AtomicMeasure":
        atoms = list(atoms)
        if not atoms:
            if dim is None:
                raise InvalidInputError("cannot infer dimension of an empty atom list")
            return cls.zero(dim)
        pts = points_array([p for p, _ in atoms])
        if dim is not None and pts.shape[1] != dim:
            raise InvalidInputError(f"atom points have dimension {pts.shape[1]}, expected {dim}")
        return cls(pts.shape[1], pts, [complex(w) for _, w in atoms])

    @classmethod
    def zero(cls, dim: int) -> "AtomicMeasure":
        return cls(dim, np.zeros((0, dim)), np.zeros(0, dtype=complex))

    @classmethod
    def point_mass(cls, angles: Sequence[float], weight: complex = 1.0) -> "AtomicMeasure":
        a = np.atleast_1d(np.asarray(angles, dtype=float))
        return cls(a.size, a[None, :], [weight])

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @property
    def atoms(self) -> list[tuple[TorusPoint, complex]]:
        return [(TorusPoint(tuple(a)), complex(w)) for a, w in zip(self.angles, self.weights)]

    @property
    def points(self) -> list[TorusPoint]:
        return to_points(self.angles)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.weights.imag == 0.0))

    @property
    def is_positive(self) -> bool:
        return self.size > 0 and self.is_real and bool(np.all(self.weights.real > 0.0))

    @property
    def classification(self) -> str:
        if self.is_positive:
            return "positive"
        return "real" if self.is_real else "complex"

    @property
    def total_variation(self) -> float:
        return float(np.sum(np.abs(self.weights)))

    @property
    def mass(self) -> complex:
        """Total mass mu(T^n), i.e. the sum of weights."""
        return complex(np.sum(self.weights))

    @property
    def is_zero(self) -> bool:
        return self.total_variation == 0.0

    def scaled(self, c: complex) -> "AtomicMeasure":
        return AtomicMeasure(self.dim, self.angles, self.weights * c)

    def with_weights(self, weights) -> "AtomicMeasure":
        return AtomicMeasure(self.dim, self.angles, weights)

    def __add__(self, other: "AtomicMeasure") -> "AtomicMeasure":
        if other.dim != self.dim:
            raise InvalidInputError("cannot add measures of different dimension")
        return AtomicMeasure(self.dim, np.vstack([self.angles, other.angles]),
                             np.concatenate([self.weights, other.weights]))

    def merged(self) -> "AtomicMeasure":
        """Merge atoms at identical points by summing their weights."""
        acc: dict[tuple, complex] = {}
        for a, w in zip(map(tuple, self.angles), self.weights):
            acc[a] = acc.get(a, 0j) + w
        if not acc:
            return AtomicMeasure.zero(self.dim)
        return AtomicMeasure(self.dim, np.array(list(acc.keys())), list(acc.values()))


@dataclass(frozen=True, eq=False)
class MomentTable:
    """Moments M(k) for every k in the max-norm box |k_j| <= degree."""

    dim: int
    degree: int
    values: np.ndarray = field(repr=False)

    def __getitem__(self, k) -> complex:
        k = as_index(k)
        if len(k) != self.dim:
            raise InvalidInputError("index dimension mismatch")
        if max(abs(x) for x in k) > self.degree:
            raise KeyError(k)
        return complex(self.values[tuple(x + self.degree for x in k)])

    def indices(self) -> list[tuple[int, ...]]:
        return [tuple(k) for k in box_indices(self.dim, self.degree)]

    def items(self):
        for k in self.indices():
            yield k, self[k]

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        return dict(self.items())


def box_indices(dim: int, lo: int, hi: int | None = None) -> np.ndarray:
    """All integer vectors with every component in [lo, hi] (or [-lo, lo])."""
    if hi is None:
        lo, hi = -lo, lo
    if hi < lo:
        return np.zeros((0, dim), dtype=np.int64)
    return np.array(list(itertools.product(range(lo, hi + 1), repeat=dim)),
                    dtype=np.int64).reshape(-1, dim)


def moments_at(mu: AtomicMeasure, K) -> np.ndarray:
    """Vector of moments sum_i w_i exp(i <k, a_i>) for each row k of K."""
    K = np.asarray(K, dtype=np.int64).reshape(-1, mu.dim)
    out = np.zeros(K.shape[0], dtype=complex)
    if mu.size == 0 or K.shape[0] == 0:
        return out
    step = max(1, _BLOCK // K.shape[0])
    Kf = K.T.astype(float)
    for s in range(0, mu.size, step):
        phase = mu.angles[s:s + step] @ Kf
        out += mu.weights[s:s + step] @ np.exp(1j * phase)
    return out


def _check_dim(mu: AtomicMeasure, n: int):
    if mu.dim != n:
        raise InvalidInputError(f"dimension mismatch: measure has {mu.dim}, got {n}")


def moment(mu: AtomicMeasure, k) -> complex:
    """Fourier moment M(k) = integral of z_1^k_1 ... z_n^k_n dmu."""
    k = as_index(k)
    _check_dim(mu, len(k))
    return complex(moments_at(mu, [k])[0])


def _check_degree(N):
    if int(N) != N or N < 1:
        raise InvalidInputError(f"degree must be a positive integer, got {N!r}")
    return int(N)


def moment_table(mu: AtomicMeasure, N: int) -> MomentTable:
    N = _check_degree(N)
    K = box_indices(mu.dim, N)
    vals = moments_at(mu, K).reshape((2 * N + 1,) * mu.dim)
    vals.setflags(write=False)
    return MomentTable(mu.dim, N, vals)


def mixed_indices(dim: int, N: int) -> np.ndarray:
    K = box_indices(dim, N)
    mask = (K > 0).any(axis=1) & (K < 0).any(axis=1)
    return K[mask]


def rp_defect(mu: AtomicMeasure, N: int) -> float:
    """Largest |M(k)| over mixed indices k in the degree-N box."""
    N = _check_degree(N)
    if not mu.is_real:
        raise InvalidInputError("the RP criterion applies to real measures only")
    K = mixed_indices(mu.dim, N)
    if K.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(moments_at(mu, K))))


def is_rp_candidate(mu: AtomicMeasure, N: int, tol: float = DEFAULT_DEFECT_TOL) -> bool:
    return rp_defect(mu, N) <= tol * max(1.0, mu.total_variation)


def a00_defect(mu: AtomicMeasure, N: int) -> float:
    """Largest |M(k)| over k with every component in [1, N]."""
    N = _check_degree(N)
    if mu.size == 0:
        return 0.0
    return float(np.max(np.abs(moments_at(mu, box_indices(mu.dim, 1, N)))))


def reflect_last(angles) -> np.ndarray:
    """Angles of T(z) = (z_1, ..., z_{n-1}, conj z_n), for an array or point list."""
    a = points_array(angles, allow_empty=True).copy()
    a[:, -1] = TWO_PI - a[:, -1]
    return normalize_angles(a)


def pushforward_T(mu: AtomicMeasure) -> AtomicMeasure:
    """Push mu forward under conjugation of the last coordinate."""
    if mu.size == 0:
        return mu
    return AtomicMeasure(mu.dim, reflect_last(mu.angles), mu.weights)


def poisson_kernel(angles: np.ndarray, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    num = 1.0 - np.abs(z) ** 2
    den = np.abs(np.exp(1j * np.asarray(angles)) - z) ** 2
    return np.prod(num / den, axis=-1)


def poisson_eval(mu: AtomicMeasure, z: Sequence[complex]) -> complex:
    """Poisson integral of mu at an interior point z of the polydisc."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_dim(mu, z.size)
    if np.any(np.abs(z) >= 1.0):
        raise InvalidInputError("Poisson evaluation needs |z_j| < 1 for every j")
    if mu.size == 0:
        return 0j
    return complex(mu.weights @ poisson_kernel(mu.angles, z))


CURVE_FAMILIES = ("identity", "negated", "affine", "perturbed", "staircase")


@dataclass(frozen=True)
class CurveSpec:
    """A parametrized curve v -> psi(v) describing the graph {(v, psi(v))}.

    ``affine`` is psi(v) = slope*v + offset, ``perturbed`` is v + alpha*sin(v)
    with |alpha| < 1, and ``staircase`` is a strictly increasing piecewise
    linear map whose slopes alternate between ``steep`` and ``2 - steep`` over
    ``steps`` equal pieces of [0, 2*pi).
    """

    family: str = "identity"
    slope: float = 1.0
    offset: float = 0.0
    alpha: float = 0.0
    steps: int = 4
    steep: float = 1.5

    def __post_init__(self):
        if self.family not in CURVE_FAMILIES:
            raise InvalidInputError(
                f"unknown curve family {self.family!r}; expected one of {CURVE_FAMILIES}")
        if self.family == "perturbed" and not abs(self.alpha) < 1:
            raise InvalidInputError("perturbed curve needs |alpha| < 1")
        if self.family == "staircase":
            if self.steps < 2 or self.steps % 2:
                raise InvalidInputError("staircase needs an even number of steps >= 2")
            if not 0 < self.steep < 2:
                raise InvalidInputError("staircase slope must lie in (0, 2)")

    @classmethod
    def parse(cls, spec) -> "CurveSpec":
        if isinstance(spec, CurveSpec):
            return spec
        if isinstance(spec, str):
            return cls(spec)
        if isinstance(spec, dict):
            return cls(**spec)
        raise InvalidInputError(f"cannot interpret curve spec {spec!r}")

    @property
    def increasing(self) -> bool:
        if self.family == "affine":
            return self.slope > 0
        return self.family != "negated"

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        if self.family == "identity":
            return v.copy()
        if self.family == "negated":
            return -v
        if self.family == "affine":
            return self.slope * v + self.offset
        if self.family == "perturbed":
            return v + self.alpha * np.sin(v)
        return self._staircase(v)

    def _staircase(self, v):
        q = np.floor(v / TWO_PI)
        r = v - TWO_PI * q
        L = TWO_PI / self.steps
        idx = np.minimum(np.floor(r / L), self.steps - 1)
        odd = idx % 2 == 1
        base = (idx // 2) * 2 * L + np.where(odd, L * self.steep, 0.0)
        slope = np.where(odd, 2.0 - self.steep, self.steep)
        return base + slope * (r - idx * L) + TWO_PI * q


def sample_graph_curve(psi, m: int) -> list[TorusPoint]:
    """m points (v_j, psi(v_j)) with v_j = 2*pi*j/m."""
    psi = CurveSpec.parse(psi)
    if int(m) != m or m < 1:
        raise InvalidInputError("sample count must be a positive integer")
    v = TWO_PI * np.arange(int(m)) / int(m)
    return to_points(np.column_stack([v, psi(v)]))


def sample_monomial_arc(m: int, half_width: float, power: int = 1, z2_power: int = 1,
                        theta: float = 0.0, windows: int = 8) -> list[TorusPoint]:
    """Points where z_1^power * z_2^z2_power lands on the arc |omega - theta| <= half_width.

    Point j sits at (v_j, (theta + omega_j - power*v_j) / z2_power) with
    v_j = 2*pi*j/m; omega_j cycles through ``windows`` equally spaced offsets
    spanning [-half_width, half_width], endpoints included.
    """
    if int(m) != m or m < 1:
        raise InvalidInputError("sample count must be a positive integer")
    if power < 1 or z2_power < 1:
        raise InvalidInputError("monomial exponents must be >= 1")
    if not 0 <= half_width <= math.pi:
        raise InvalidInputError("arc half-width must lie in [0, pi]")
    m = int(m)
    q = min(m, int(windows))
    j = np.arange(m)
    if q > 1:
        omega = -half_width + 2.0 * half_width * (j % q) / (q - 1)
    else:
        omega = np.zeros(m)
    v = TWO_PI * j / m
    second = (theta + omega - power * v) / z2_power
    return to_points(np.column_stack([v, second]))


MAX_CANTOR_DEPTH = 12


def cantor_parameters(depth: int) -> np.ndarray:
    """Midpoints of the 2^depth intervals of the middle-thirds set on [0, 2*pi]."""
    if int(depth) != depth or depth < 0 or depth > MAX_CANTOR_DEPTH:
        raise InvalidInputError(f"Cantor depth must be an integer in [0, {MAX_CANTOR_DEPTH}]")
    left = np.array([0.0])
    length = TWO_PI
    for _ in range(int(depth)):
        length /= 3.0
        left = np.concatenate([left, left + 2.0 * length])
    return np.sort(left + length / 2.0)


def cantor_points(depth: int, carrier="negated") -> list[TorusPoint]:
    t = cantor_parameters(depth)
    psi = CurveSpec.parse(carrier)
    return to_points(np.column_stack([t, psi(t)]))


def lebesgue_on_points(points) -> AtomicMeasure:
    """Uniform probability measure on the given points."""
    arr = points_array(points)
    m = arr.shape[0]
    return AtomicMeasure(arr.shape[1], arr, np.full(m, 1.0 / m))


def product_grid(m: int, dim: int = 2) -> list[TorusPoint]:
    """All points whose coordinates lie in {2*pi*j/m : j = 0..m-1}."""
    if int(m) != m or m < 1 or int(dim) < 1:
        raise InvalidInputError("grid size and dimension must be positive integers")
    axis = TWO_PI * np.arange(int(m)) / int(m)
    mesh = np.meshgrid(*([axis] * int(dim)), indexing="ij")
    return to_points(np.column_stack([g.reshape(-1) for g in mesh]))
