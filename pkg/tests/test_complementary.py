import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdt import instances
from cdt.canonical import CanonicalFunction
from cdt.complementary import (
    critical_pair_residual,
    f_grad,
    f_hess,
    f_value,
    in_X0,
    is_critical_pair,
    primal_point,
    xi_grad_sigma,
    xi_grad_x,
    xi_hess_xx,
    xi_value,
)
from cdt.exceptions import BoundaryOrOutsideDomain, NotInX0, UnsupportedForKind
from cdt.oracle import fd_grad, fd_hess
from cdt.quadratic import ProblemInstance, assemble, eval_q

seeds = st.integers(0, 2**31 - 1)
smooth_kinds = st.sampled_from(instances.SMOOTH_KINDS)


def random_smooth_problem(rng, n, m, kind):
    v = instances.random_v(rng, m, kind)
    p, _, _ = instances.reverse_engineer(rng, n, m, v, sign=rng.choice([-1.0, 1.0]))
    return p


class TestXiValue:
    def test_example1_at_critical_pair(self):
        assert xi_value(instances.example1(), [1.0], [0.0]) == 0.5

    def test_outside_conjugate_domain(self):
        assert xi_value(instances.example1(), [1.0], [-0.5]) == -np.inf

    def test_sup_over_sigma_recovers_f(self):
        p = instances.double_well()
        grid = np.linspace(-5.0, 5.0, 20001)
        for x in (-1.7, 0.4, 1.1):
            sup = max(xi_value(p, [x], [s]) for s in grid)
            # grid step 5e-4 bounds the gap by step^2 / 2
            assert sup == pytest.approx(f_value(p, [x]), abs=2e-7)
            assert sup <= f_value(p, [x]) + 1e-12

    @given(seeds, smooth_kinds)
    def test_xi_at_gradient_equals_f(self, seed, kind):
        rng = np.random.default_rng(seed)
        p = random_smooth_problem(rng, 2, 2, kind)
        x = rng.normal(size=2)
        s = p.v.grad(eval_q(p, x))
        assert xi_value(p, x, s) == pytest.approx(f_value(p, x), rel=1e-9, abs=1e-9)
        other = instances.random_interior_sigma(rng, p.v)
        assert xi_value(p, x, other) <= f_value(p, x) + 1e-9


class TestPrimal:
    def test_double_well_origin_is_stationary(self):
        np.testing.assert_array_equal(f_grad(instances.double_well(), [0.0]), [0.0])

    def test_double_well_derivatives_match_finite_differences(self, rng):
        p = instances.double_well()
        for x in rng.uniform(-2.5, 2.5, 20):
            fd = fd_grad(lambda z: f_value(p, z), [x])
            np.testing.assert_allclose(f_grad(p, [x]), fd, rtol=1e-5, atol=1e-8)
            fdh = fd_hess(lambda z: f_value(p, z), [x])
            np.testing.assert_allclose(f_hess(p, [x]), fdh, rtol=1e-4, atol=1e-6)

    def test_cone_value_is_restricted_objective(self):
        p = instances.example1()
        assert f_value(p, [0.5]) == pytest.approx(-0.125 + 0.5)
        assert f_value(p, [1.5]) == np.inf
        assert not in_X0(p, [1.0])
        assert in_X0(p, [0.5])
        assert primal_point(p, [0.5]).in_X0

    def test_cone_has_no_gradient(self):
        with pytest.raises(UnsupportedForKind):
            f_grad(instances.example1(), [0.5])

    def test_gradient_needs_x0(self):
        p = ProblemInstance(instances.double_well().quadratics, CanonicalFunction.exponential(1))
        assert in_X0(p, [3.0])
        np.testing.assert_allclose(f_grad(p, [0.0]), [0.0])
        p_bad = instances.example1()
        with pytest.raises(UnsupportedForKind):
            f_hess(p_bad, [0.0])
        assert issubclass(NotInX0, BoundaryOrOutsideDomain)

    @given(seeds, smooth_kinds)
    def test_gradient_equals_partial_of_xi(self, seed, kind):
        rng = np.random.default_rng(seed)
        p = random_smooth_problem(rng, 3, 2, kind)
        x = rng.normal(size=3)
        s = p.v.grad(eval_q(p, x))
        np.testing.assert_allclose(f_grad(p, x), xi_grad_x(p, x, s), atol=1e-9)


class TestXiDerivatives:
    def test_example1_x_gradient_vanishes(self):
        np.testing.assert_array_equal(xi_grad_x(instances.example1(), [1.0], [0.0]), [0.0])

    def test_x_gradient_is_affine(self, rng):
        p = random_smooth_problem(rng, 3, 2, "QuadraticDiag")
        s = rng.normal(size=2)
        x1, x2 = rng.normal(size=3), rng.normal(size=3)
        mid = xi_grad_x(p, 0.5 * (x1 + x2), s)
        np.testing.assert_allclose(mid, 0.5 * (xi_grad_x(p, x1, s) + xi_grad_x(p, x2, s)), atol=1e-12)

    def test_x_hessian_is_assembled_matrix(self, rng):
        p = random_smooth_problem(rng, 3, 2, "QuadraticDiag")
        s = rng.normal(size=2)
        np.testing.assert_array_equal(xi_hess_xx(p, s), assemble(p, s)[0])

    @given(seeds, smooth_kinds)
    def test_sigma_gradient_matches_finite_differences(self, seed, kind):
        rng = np.random.default_rng(seed)
        p = random_smooth_problem(rng, 2, 3, kind)
        x = rng.normal(size=2)
        s = instances.random_interior_sigma(rng, p.v)
        fd = fd_grad(lambda t: xi_value(p, x, t), s, h=1e-7)
        np.testing.assert_allclose(xi_grad_sigma(p, x, s), fd, rtol=1e-5, atol=1e-6)

    def test_sigma_gradient_needs_interior(self):
        p = ProblemInstance(instances.double_well().quadratics, CanonicalFunction.exponential(1))
        with pytest.raises(BoundaryOrOutsideDomain):
            xi_grad_sigma(p, [0.0], [0.0])


class TestCriticalResidual:
    def test_example1_pair(self):
        assert critical_pair_residual(instances.example1(), [1.0], [0.0]) == (0.0, 0.0)

    def test_double_well_pair(self):
        p = instances.double_well()
        assert critical_pair_residual(p, [0.0], [-1.0]) == (0.0, 0.0)
        assert is_critical_pair(p, [0.0], [-1.0])

    def test_generic_pair_is_not_critical(self, rng):
        p = random_smooth_problem(rng, 3, 2, "ExpPlusQuad")
        r_x, r_s = critical_pair_residual(p, rng.normal(size=3), instances.random_interior_sigma(rng, p.v))
        assert r_x > 0 and r_s > 0

    @given(seeds, smooth_kinds)
    def test_reverse_engineered_pairs_are_critical(self, seed, kind):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, 2, kind)
        p, x, s = instances.reverse_engineer(rng, 3, 2, v)
        assert is_critical_pair(p, x, s)

    def test_cone_residual_handles_boundary_sigma(self):
        p = instances.example1()
        r_x, r_s = critical_pair_residual(p, [1.0], [0.5])
        assert r_x > 0 and r_s == 0.0
        assert critical_pair_residual(p, [0.5], [0.5])[1] > 0
