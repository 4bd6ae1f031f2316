import math

import numpy as np
import pytest

import einstein4.problems as P
from einstein4._kernels import BACKEND, get_backend
from einstein4.bounds import OptimizationProblem, minimize
from einstein4.poly import Poly, variables


class TestPoly:
    def test_arithmetic(self):
        x, y = variables(2)
        p = (x + 2 * y) ** 2 - 3
        pts = np.array([[1.0, 2.0], [0.5, -1.0]])
        expected = (pts[:, 0] + 2 * pts[:, 1]) ** 2 - 3
        assert np.allclose(p(pts), expected)

    def test_single_point_call(self):
        (x,) = variables(1)
        assert (x * x)(np.array([3.0])) == pytest.approx(9.0)

    def test_flatten_sorted_and_stable(self):
        x, y = variables(2)
        p = y * y + x + 1.0 + x * y
        coeffs, expos = p.flatten()
        assert [tuple(e) for e in expos] == sorted(tuple(e) for e in expos)
        coeffs2, expos2 = ((y * y + 1.0) + (x + x * y)).flatten()
        assert np.array_equal(coeffs, coeffs2)
        assert np.array_equal(expos, expos2)

    def test_degree_and_zero_terms_dropped(self):
        x, y = variables(2)
        p = x * y - x * y
        assert p.degree() == 0
        assert p.terms == {}

    def test_dim_mismatch(self):
        (x,) = variables(1)
        a, _ = variables(2)
        with pytest.raises(ValueError):
            x + a


def quadratic_1d():
    (x,) = variables(1)
    return OptimizationProblem(
        name="x-squared", variables=("x",),
        lower=np.array([-1.0]), upper=np.array([1.0]),
        objective=x * x, constraints=())


class TestEngine:
    def test_quadratic_example(self):
        res = minimize(quadratic_1d(), grid=101, depth=3)
        assert res.feasible
        assert abs(res.best_value) < 1e-4

    def test_infeasible_explicit(self):
        (x,) = variables(1)
        prob = OptimizationProblem(
            name="empty", variables=("x",),
            lower=np.array([0.0]), upper=np.array([1.0]),
            objective=x, constraints=(("x>=2", x - 2.0),))
        res = minimize(prob, grid=32, depth=2)
        assert not res.feasible
        assert res.best_value is None
        assert res.minimizer is None
        assert res.feasible_points_evaluated == 0

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            minimize(quadratic_1d(), grid=4)
        with pytest.raises(ValueError):
            minimize(quadratic_1d(), depth=-1)

    def test_monotone_in_grid_and_depth(self):
        prob = P.four_positive_problem()
        coarse = minimize(prob, grid=16, depth=0).best_value
        finer = minimize(prob, grid=32, depth=0).best_value
        deeper = minimize(prob, grid=32, depth=4).best_value
        assert finer <= coarse + 1e-15
        assert deeper <= finer + 1e-15

    def test_minimizer_feasible_at_tolerance(self):
        prob = P.upper_bound_step1_problem()
        res = minimize(prob, grid=24, depth=3)
        assert res.feasible
        x = res.minimizer_array().reshape(1, -1)
        for name, margin in prob.constraints:
            assert margin(x)[0] >= -prob.feas_tol, name

    def test_resolution_certificate_shrinks(self):
        r0 = minimize(quadratic_1d(), grid=64, depth=0)
        r4 = minimize(quadratic_1d(), grid=64, depth=4)
        assert r4.grid_resolution < r0.grid_resolution / 100

    def test_rational_objective(self):
        res = minimize(P.curve_min_problem(), grid=101, depth=3)
        assert res.best_value == pytest.approx(1 / 30, abs=1e-9)
        assert res.minimizer["k"] == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_axis(self):
        prob = P.weyl_min_problem(0.0)
        res = minimize(prob, grid=16, depth=1)
        assert res.feasible
        assert res.best_value == pytest.approx(0.0, abs=1e-15)


class TestBackends:
    def test_compiled_backend_available(self):
        # the build is expected to ship the extension; the numpy kernel is a fallback
        assert BACKEND == "compiled"

    @pytest.mark.parametrize("prob_builder", [
        quadratic_1d,
        P.four_positive_problem,
        P.three_positive_problem,
        P.upper_bound_step1_problem,
        P.upper_bound_step2_problem,
    ])
    def test_backends_bit_identical(self, prob_builder):
        prob = prob_builder()
        rc = minimize(prob, grid=12, depth=2, backend="compiled")
        rp = minimize(prob, grid=12, depth=2, backend="python")
        assert rc.feasible == rp.feasible
        if rc.feasible:
            assert rc.best_value == rp.best_value
            assert rc.minimizer == rp.minimizer
        assert rc.feasible_points_evaluated == rp.feasible_points_evaluated

    def test_thread_count_invariance(self):
        prob = P.upper_bound_step1_problem()
        r1 = minimize(prob, grid=16, depth=2, threads=1)
        r8 = minimize(prob, grid=16, depth=2, threads=8)
        assert r1.best_value == r8.best_value
        assert r1.minimizer == r8.minimizer
        assert r1.feasible_points_evaluated == r8.feasible_points_evaluated

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            get_backend("fortran")


class TestWitnessPoints:
    def test_round_sphere_feasible_in_three_positive(self):
        prob = P.three_positive_problem()
        x = np.array([[1 / 3, 1 / 3, 0.0, 0.0]])  # (a1, a2, u, v)
        for name, margin in prob.constraints:
            assert margin(x)[0] >= -prob.feas_tol, name

    def test_witnesses_feasible_in_step1(self):
        prob = P.upper_bound_step1_problem()
        witnesses = {
            "round-sphere": np.array([[1 / 3, 1 / 3, 0.0, 0.0]]),  # (a3, a2, u, v)
            "fubini-study": np.array([[2 / 3, 1 / 6, 0.0, 1.0]]),
        }
        for label, x in witnesses.items():
            assert np.all(prob.lower <= x[0]) and np.all(x[0] <= prob.upper)
            for name, margin in prob.constraints:
                assert margin(x)[0] >= -prob.feas_tol, (label, name)

    def test_round_sphere_objective_value_in_step2(self):
        prob = P.upper_bound_step2_problem()
        x = np.array([[1 / 3, 1 / 3, 1 / 3, 1 / 3]])
        for name, margin in prob.constraints:
            assert margin(x)[0] >= -prob.feas_tol, name
        assert prob.objective(x)[0] == pytest.approx(1.0)


class TestNamedProblems:
    def test_four_positive_hits_closed_form_root(self):
        out = P.four_positive_bound(grid=64, depth=6)
        assert out.direct.feasible
        assert abs(out.direct.best_value - P.FOUR_POS_BOUND) < 1e-3
        assert out.scalar_root == pytest.approx(P.FOUR_POS_BOUND, abs=1e-9)
        assert out.relaxed.best_value <= -1 / 3 + 1e-3

    def test_curve_values(self):
        assert P.curve_lower(1.0) == pytest.approx(1 / 30)
        assert P.curve_lower(4.0) == pytest.approx(7 / 147)
        # at k = 1 the quadratic branch degenerates: upper = 3/15 = 1/5
        assert P.curve_upper(1.0) == pytest.approx(0.2)

    def test_weyl_min_matches_analytic(self):
        for w3 in (0.0, 1 / 6, 2 / 3, 1.0):
            out = P.weyl_min_bound(w3, grid=64)
            assert out.numeric == pytest.approx(out.analytic, abs=1e-6)

    def test_weyl_min_analytic_values(self):
        # sqrt(12 (2/3)^2 + 4 (2/3) + 1) = 3 exactly
        assert P.weyl_min_analytic(2 / 3) == pytest.approx(-1 / 3, abs=1e-15)
        assert P.weyl_min_analytic(1 / 6) == pytest.approx((4 / 3 - math.sqrt(2)) / 2,
                                                           abs=1e-15)

    def test_weyl_min_negative_w3_infeasible(self):
        out = P.weyl_min_bound(-0.25)
        assert not out.result.feasible
        assert out.numeric is None

    def test_weyl_equality_witness(self):
        # the (-1/3, -1/3, 2/3) spectrum: constraint margin is exactly zero
        prob = P.weyl_min_problem(2 / 3)
        x = np.array([[-1 / 3]])
        (_, margin), = prob.constraints
        assert margin(x)[0] == pytest.approx(0.0, abs=1e-15)
        assert P.weyl_min_analytic(2 / 3) == pytest.approx(-1 / 3, abs=1e-9)
