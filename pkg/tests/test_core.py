import math

import numpy as np
import pytest

from torusrp import (
    AtomicMeasure,
    CurveSpec,
    InvalidInputError,
    MultiIndex,
    TorusPoint,
    a00_defect,
    cantor_points,
    is_rp_candidate,
    lebesgue_on_points,
    moment,
    moment_table,
    poisson_eval,
    pushforward_T,
    rp_defect,
    sample_graph_curve,
    sample_monomial_arc,
)
from torusrp.core import (
    MAX_CANTOR_DEPTH,
    cantor_parameters,
    mixed_indices,
    normalize_angles,
    product_grid,
)

from conftest import TWO_PI, antidiagonal, brute_moment, diagonal, random_measure

PI = math.pi


class TestTypes:
    def test_torus_point_normalizes(self):
        p = TorusPoint((-PI / 2, 5 * PI, TWO_PI))
        assert p.angles == pytest.approx((3 * PI / 2, PI, 0.0))
        assert all(0 <= a < TWO_PI for a in p.angles)

    def test_normalize_never_returns_two_pi(self):
        a = normalize_angles(np.array([-1e-18, TWO_PI, 4 * PI]))
        assert np.all((a >= 0) & (a < TWO_PI))

    @pytest.mark.parametrize("k,mixed,a00,analytic", [
        ((1, -1), True, False, False),
        ((2, 3), False, True, True),
        ((0, 3), False, False, True),
        ((-1, -2), False, False, False),
        ((0, 0, 0), False, False, True),
        ((1, 0, -4), True, False, False),
    ])
    def test_multi_index_predicates(self, k, mixed, a00, analytic):
        idx = MultiIndex(k)
        assert (idx.is_mixed, idx.is_a00, idx.is_analytic) == (mixed, a00, analytic)

    def test_multi_index_rejects_non_integers(self):
        with pytest.raises(InvalidInputError):
            MultiIndex((1.5, 2))

    def test_classification_is_function_of_weights(self):
        a = [[0.0, 0.0], [1.0, 2.0]]
        assert AtomicMeasure(2, a, [1, 2]).classification == "positive"
        assert AtomicMeasure(2, a, [1, -2]).classification == "real"
        assert AtomicMeasure(2, a, [1, 2j]).classification == "complex"
        assert AtomicMeasure(2, a, [0, 1]).classification == "real"

    def test_total_variation_and_zero(self):
        mu = AtomicMeasure(2, [[0, 0], [1, 1]], [3, -4j])
        assert mu.total_variation == pytest.approx(7.0)
        assert not mu.is_zero
        assert AtomicMeasure.zero(2).is_zero
        assert AtomicMeasure(2, [[0, 0]], [0]).is_zero

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            AtomicMeasure(3, [[0.0, 1.0]], [1.0])

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidInputError):
            AtomicMeasure(2, [[0.0, math.nan]], [1.0])

    def test_arrays_are_read_only(self):
        mu = diagonal(4)
        with pytest.raises(ValueError):
            mu.weights[0] = 5


class TestMoments:
    def test_point_mass_at_origin(self):
        assert moment(AtomicMeasure.point_mass([0, 0]), (5, -3)) == pytest.approx(1)

    def test_point_mass_at_pi(self):
        assert moment(AtomicMeasure.point_mass([PI, 0]), (1, 0)) == pytest.approx(-1)

    def test_diagonal_eight(self):
        mu = diagonal(8)
        assert moment(mu, (1, -1)) == pytest.approx(1, abs=1e-14)
        assert abs(moment(mu, (1, 1))) < 1e-14

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            moment(diagonal(4), (1, 2, 3))

    def test_table_point_mass(self):
        t = moment_table(AtomicMeasure.point_mass([0, 0]), 1)
        assert len(t.indices()) == 9
        assert all(abs(v - 1) < 1e-15 for _, v in t.items())

    def test_table_zero_measure(self):
        t = moment_table(AtomicMeasure.zero(2), 2)
        assert all(v == 0 for _, v in t.items())

    def test_table_antidiagonal_matches_brute_force(self):
        mu = antidiagonal(16)
        t = moment_table(mu, 3)
        atoms = [(tuple(a), w) for a, w in zip(mu.angles, mu.weights)]
        for k in t.indices():
            assert abs(t[k] - brute_moment(atoms, k)) < 1e-13
        # z1^k z2^k is identically 1 on (v, -v); mixed (2, -2) sums e^{4iv} to 0
        assert abs(t[(2, 2)] - 1) < 1e-14 and abs(t[(1, 1)] - 1) < 1e-14
        assert abs(t[(2, -2)]) < 1e-14

    def test_table_rejects_bad_degree(self):
        with pytest.raises(InvalidInputError):
            moment_table(diagonal(4), 0)

    def test_table_agrees_with_moment(self, rng):
        mu = random_measure(rng, 9)
        t = moment_table(mu, 2)
        for k in t.indices():
            assert abs(t[k] - moment(mu, k)) < 1e-13

    def test_mass_is_zero_moment(self, rng):
        mu = random_measure(rng, 7)
        assert moment_table(mu, 1)[(0, 0)] == pytest.approx(mu.mass)

    def test_mixed_indices(self):
        K = mixed_indices(2, 2)
        assert len(K) == 8
        assert all(MultiIndex(tuple(k)).is_mixed for k in K)


class TestDefects:
    def test_antidiagonal_is_rp(self):
        assert rp_defect(antidiagonal(16), 7) <= 1e-12

    def test_diagonal_is_not_rp(self):
        assert rp_defect(diagonal(8), 1) == pytest.approx(1, abs=1e-14)

    def test_point_mass_defect(self):
        assert rp_defect(AtomicMeasure.point_mass([0, 0]), 1) == pytest.approx(1)

    def test_complex_measure_rejected(self):
        with pytest.raises(InvalidInputError):
            rp_defect(AtomicMeasure(2, [[0, 0]], [1j]), 1)

    def test_candidate_tolerance_scales_with_variation(self):
        mu = AtomicMeasure(2, [[0, 0], [0, 0]], [1e-9, -1e-9])
        assert is_rp_candidate(mu, 2)
        big = AtomicMeasure(2, [[0, 0], [1, 2]], [5e8, 5e8])
        assert is_rp_candidate(big, 1, tol=1.0)

    def test_a00_defect_diagonal(self):
        assert a00_defect(diagonal(8), 3) <= 1e-12

    def test_a00_defect_antidiagonal(self):
        assert a00_defect(antidiagonal(16), 3) == pytest.approx(1, abs=1e-14)

    def test_a00_defect_zero_measure(self):
        assert a00_defect(AtomicMeasure.zero(2), 4) == 0.0


class TestPushforward:
    def test_point_mass(self):
        out = pushforward_T(AtomicMeasure.point_mass([PI / 2, PI / 3]))
        assert out.angles[0] == pytest.approx([PI / 2, TWO_PI - PI / 3])

    def test_zero_angle_fixed(self):
        out = pushforward_T(AtomicMeasure.point_mass([1.0, 0.0]))
        assert out.angles[0, 1] == 0.0

    def test_antidiagonal_to_diagonal(self):
        out = pushforward_T(antidiagonal(16))
        assert np.allclose(out.angles[:, 0], out.angles[:, 1])
        # rp defect of the input equals the largest |M| over the transported box
        K = [(a, -b) for a in range(1, 4) for b in range(1, 4)]
        lhs = max(abs(moment(antidiagonal(16), k)) for k in K)
        rhs = max(abs(moment(out, (a, b))) for a in range(1, 4) for b in range(1, 4))
        assert lhs == pytest.approx(rhs, abs=1e-13)


class TestPoisson:
    def test_center(self):
        assert poisson_eval(AtomicMeasure.point_mass([0, 0]), [0, 0]) == pytest.approx(1)

    def test_kernel_formula(self):
        assert poisson_eval(AtomicMeasure.point_mass([0, 0]), [0.5, 0]) == pytest.approx(3)

    def test_antidiagonal_series(self):
        val = poisson_eval(antidiagonal(64), [0.5, 0.5])
        assert abs(val.real - 1.25 / 0.75) <= 1e-10

    def test_boundary_rejected(self):
        with pytest.raises(InvalidInputError):
            poisson_eval(diagonal(4), [1.0, 0.0])

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            poisson_eval(diagonal(4), [0.1])


class TestSamplers:
    def test_identity_four(self):
        pts = sample_graph_curve("identity", 4)
        assert [p.angles for p in pts] == pytest.approx(
            [(0, 0), (PI / 2, PI / 2), (PI, PI), (3 * PI / 2, 3 * PI / 2)])

    def test_negated_four(self):
        pts = sample_graph_curve("negated", 4)
        assert [p.angles for p in pts] == pytest.approx(
            [(0, 0), (PI / 2, 3 * PI / 2), (PI, PI), (3 * PI / 2, PI / 2)])

    def test_perturbed_formula(self):
        pts = sample_graph_curve(CurveSpec("perturbed", alpha=0.3), 16)
        for j, p in enumerate(pts):
            v = TWO_PI * j / 16
            assert p.angles[1] == pytest.approx((v + 0.3 * math.sin(v)) % TWO_PI)

    def test_increasing_families(self):
        for spec in [CurveSpec("identity"), CurveSpec("perturbed", alpha=0.9),
                     CurveSpec("staircase", steps=6, steep=1.8), CurveSpec("affine", slope=2)]:
            v = np.linspace(0, TWO_PI, 200, endpoint=False)
            assert spec.increasing
            assert np.all(np.diff(spec(v)) > 0)
        assert not CurveSpec("negated").increasing

    @pytest.mark.parametrize("bad", [
        dict(family="spiral"), dict(family="perturbed", alpha=1.0),
        dict(family="staircase", steps=3), dict(family="staircase", steep=2.0)])
    def test_bad_curve(self, bad):
        with pytest.raises(InvalidInputError):
            CurveSpec(**bad)

    def test_zero_samples(self):
        with pytest.raises(InvalidInputError):
            sample_graph_curve("identity", 0)

    def test_cantor_depths(self):
        assert cantor_parameters(0) == pytest.approx([PI])
        assert cantor_parameters(1) == pytest.approx([PI / 3, 5 * PI / 3])
        t = cantor_parameters(2)
        assert len(t) == 4
        assert t == pytest.approx([PI / 9, 5 * PI / 9, 13 * PI / 9, 17 * PI / 9])
        assert (t[1] - t[0]) / (cantor_parameters(1)[1] - cantor_parameters(1)[0]) \
            == pytest.approx(1 / 3)

    def test_cantor_carrier(self):
        pts = cantor_points(1, "negated")
        assert pts[0].angles == pytest.approx((PI / 3, 5 * PI / 3))

    def test_cantor_guard(self):
        with pytest.raises(InvalidInputError):
            cantor_points(MAX_CANTOR_DEPTH + 1)

    def test_arc_values_stay_on_arc(self):
        w = PI / 3
        pts = sample_monomial_arc(64, w, power=2, z2_power=1, theta=0.4)
        for p in pts:
            phase = (2 * p.angles[0] + p.angles[1] - 0.4 + PI) % TWO_PI - PI
            assert abs(phase) <= w + 1e-12

    def test_lebesgue(self):
        mu = lebesgue_on_points(sample_graph_curve("identity", 8))
        assert mu.is_positive and mu.mass == pytest.approx(1)
        assert lebesgue_on_points([TorusPoint((0.0, 0.0))]).weights[0] == 1
        with pytest.raises(InvalidInputError):
            lebesgue_on_points([])

    def test_product_grid(self):
        pts = product_grid(3, 2)
        assert len(pts) == 9
        assert rp_defect(lebesgue_on_points(pts), 2) < 1e-14


def test_merge_duplicates(rng):
    mu = AtomicMeasure(2, [[1, 2], [1, 2], [0, 3]], [0.5, 0.25, 1.0])
    m = mu.merged()
    assert m.size == 2
    for k in [(1, -1), (2, 3), (0, 0)]:
        assert abs(moment(m, k) - moment(mu, k)) <= 1e-14
