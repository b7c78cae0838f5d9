import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdt import instances
from cdt.canonical import (
    CanonicalFunction,
    Kind,
    Smoothness,
    v_conj_grad,
    v_conj_hess,
    v_conjugate,
    v_grad,
    v_hess,
    v_subdifferential_pair_check,
    v_value,
)
from cdt.exceptions import BoundaryOrOutsideDomain, InvalidParameterError, UnsupportedForKind
from cdt.oracle import numeric_conjugate

seeds = st.integers(0, 2**31 - 1)
smooth_kinds = st.sampled_from(instances.SMOOTH_KINDS)


class TestConstruction:
    @pytest.mark.parametrize(
        "make",
        [
            lambda: CanonicalFunction.quadratic([1.0, -2.0]),
            lambda: CanonicalFunction.exp_plus_quad(1, [0.0]),
            lambda: CanonicalFunction.log_sum_exp_plus_quad(1, -1.0, []),
            lambda: CanonicalFunction.indicator_cone(2, [2]),
            lambda: CanonicalFunction(Kind.EXPONENTIAL, 2, 1, [1.0]),
            lambda: CanonicalFunction(Kind.QUADRATIC_DIAG, 2, 0, [1.0]),
        ],
    )
    def test_rejects_bad_parameters(self, make):
        with pytest.raises(InvalidParameterError):
            make()

    def test_smoothness_follows_kind(self):
        assert CanonicalFunction.indicator_cone(1).smoothness_class is Smoothness.GAMMA
        for v in (
            CanonicalFunction.quadratic([1.0]),
            CanonicalFunction.exponential(2),
            CanonicalFunction.exp_plus_quad(1, [2.0]),
            CanonicalFunction.log_sum_exp_plus_quad(2, 0.5, [1.0]),
        ):
            assert v.smoothness_class is Smoothness.GAMMA_SC2


class TestValues:
    def test_cone_value_on_negative_half_line(self):
        assert v_value(CanonicalFunction.indicator_cone(1), [-1.0]) == 0.0
        assert v_value(CanonicalFunction.indicator_cone(1), [0.5]) == np.inf

    def test_cone_equality_coordinates(self):
        v = CanonicalFunction.indicator_cone(2, [0])
        assert v_value(v, [0.0, -3.0]) == 0.0
        assert v_value(v, [-0.1, -3.0]) == np.inf

    def test_quadratic_value(self):
        assert v_value(CanonicalFunction.quadratic([2.0]), [3.0]) == 9.0

    def test_exp_plus_quad_at_origin(self):
        assert v_value(CanonicalFunction.exp_plus_quad(1, []), [0.0]) == 1.0

    def test_log_sum_exp_is_stable_for_large_arguments(self):
        v = CanonicalFunction.log_sum_exp_plus_quad(2, 1.0, [])
        assert v_value(v, [800.0, 0.0]) == pytest.approx(800.0)


class TestConjugate:
    def test_cone_outside_dual_cone(self):
        assert v_conjugate(CanonicalFunction.indicator_cone(1), [-0.1]) == np.inf

    def test_quadratic(self):
        v = CanonicalFunction.quadratic([2.0])
        assert v_conjugate(v, [4.0]) == 4.0
        assert numeric_conjugate(v, [4.0]) == pytest.approx(4.0, abs=1e-6)

    def test_exponential(self):
        v = CanonicalFunction.exponential(1)
        assert v_conjugate(v, [1.0]) == -1.0
        assert numeric_conjugate(v, [1.0]) == pytest.approx(-1.0, abs=1e-6)

    def test_entropy_boundary_is_finite(self):
        assert v_conjugate(CanonicalFunction.exponential(1), [0.0]) == 0.0
        v = CanonicalFunction.log_sum_exp_plus_quad(2, 2.0, [])
        assert v_conjugate(v, [0.0, 1.0]) == 0.0
        assert v_conjugate(v, [0.6, 0.6]) == np.inf

    @given(seeds, smooth_kinds)
    def test_fenchel_young_inequality(self, seed, kind):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, 3, kind)
        y = rng.normal(size=3)
        s = instances.random_interior_sigma(rng, v)
        assert v.value(y) + v.conjugate(s) >= y @ s - 1e-10

    @given(seeds, smooth_kinds)
    def test_fenchel_young_equality_on_gradient(self, seed, kind):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, 3, kind)
        y = rng.normal(size=3)
        s = v.grad(y)
        assert abs(v.value(y) + v.conjugate(s) - y @ s) <= 1e-8 * max(1.0, abs(y @ s))


class TestDerivatives:
    def test_quadratic(self):
        v = CanonicalFunction.quadratic([2.0])
        np.testing.assert_array_equal(v_grad(v, [3.0]), [6.0])
        np.testing.assert_array_equal(v_hess(v, [3.0]), [[2.0]])

    def test_exponential_conjugate_gradient_is_log(self):
        v = CanonicalFunction.exponential(1)
        np.testing.assert_array_equal(v_conj_grad(v, [1.0]), [0.0])
        np.testing.assert_allclose(v_grad(v, v_conj_grad(v, [2.5])), [2.5], rtol=1e-15)

    @given(seeds, smooth_kinds, st.integers(1, 4))
    def test_gradients_are_inverse_maps(self, seed, kind, m):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, m, kind)
        y = rng.normal(size=m)
        np.testing.assert_allclose(v.conj_grad(v.grad(y)), y, atol=1e-8)

    @given(seeds, smooth_kinds, st.integers(1, 4))
    def test_hessians_are_inverse(self, seed, kind, m):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, m, kind)
        s = instances.random_interior_sigma(rng, v)
        prod = v_conj_hess(v, s) @ v_hess(v, v_conj_grad(v, s))
        np.testing.assert_allclose(prod, np.eye(m), atol=1e-8)

    @given(seeds, smooth_kinds, st.integers(1, 4))
    def test_hessian_positive_definite(self, seed, kind, m):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, m, kind)
        y = rng.normal(size=m) * 3
        assert np.linalg.eigvalsh(v.hess(y))[0] > 0

    def test_conjugate_gradient_rejects_boundary(self):
        with pytest.raises(BoundaryOrOutsideDomain):
            v_conj_grad(CanonicalFunction.exponential(1), [0.0])
        with pytest.raises(BoundaryOrOutsideDomain):
            v_conj_hess(CanonicalFunction.log_sum_exp_plus_quad(2, 1.0, []), [0.5, 0.5])

    def test_cone_has_no_derivatives(self):
        v = CanonicalFunction.indicator_cone(1)
        for fn, arg in [(v_grad, [-1.0]), (v_hess, [-1.0]), (v_conj_grad, [1.0]), (v_conj_hess, [1.0])]:
            with pytest.raises(UnsupportedForKind):
                fn(v, arg)


class TestSubdifferentialPair:
    def test_zero_with_positive_multiplier(self):
        assert v_subdifferential_pair_check(CanonicalFunction.indicator_cone(1), [0.0], [5.0])

    def test_equality_coordinate_must_vanish(self):
        assert not v_subdifferential_pair_check(CanonicalFunction.indicator_cone(1, [0]), [0.3], [-7.0])

    def test_slack_with_zero_multiplier(self):
        assert v_subdifferential_pair_check(CanonicalFunction.indicator_cone(1), [-1.0], [0.0])

    def test_slack_with_positive_multiplier_fails(self):
        assert not v_subdifferential_pair_check(CanonicalFunction.indicator_cone(1), [-1.0], [0.5])

    def test_smooth_kind_unsupported(self):
        with pytest.raises(UnsupportedForKind):
            v_subdifferential_pair_check(CanonicalFunction.quadratic([1.0]), [0.0], [0.0])
