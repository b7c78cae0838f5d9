import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdt import instances
from cdt.canonical import CanonicalFunction
from cdt.cone import ConeProblem, check_j_lkkt, check_j_lkkt_max, dl_value, equality_duality
from cdt.dual import classify_sigma
from cdt.exceptions import NotCritical, UnsupportedForKind
from cdt.quadratic import ProblemInstance, QuadraticForm, eval_q0, lagrangian
from cdt.reproduce import trust_region_grid_min

seeds = st.integers(0, 2**31 - 1)


def disk_grid_max(p, steps=801):
    """Grid maximum of q_0 over the disk by minimizing the negated instance."""
    neg = ProblemInstance(
        (QuadraticForm(-p.As[0], -p.bs[0], -p.cs[0]),) + p.quadratics[1:], p.v
    )
    val, res = trust_region_grid_min(neg, steps)
    return -val, res


class TestConeProblem:
    def test_requires_cone(self):
        with pytest.raises(UnsupportedForKind):
            ConeProblem(instances.double_well())

    def test_feasibility(self):
        cp = ConeProblem(instances.example1())
        assert cp.feasible([1.0]) and cp.feasible([-0.3])
        assert not cp.feasible([1.1])


class TestDL:
    def test_example1(self):
        p = instances.example1()
        assert dl_value(p, [0.0]) == 0.5
        for s in (0.3, 0.7, 2.5):
            assert dl_value(p, [s]) == pytest.approx(0.5 * (1 / (1 - s) - s), rel=1e-13)
        assert np.isnan(dl_value(p, [1.0]))

    def test_zero_rhs_singular_psd(self):
        p = instances.double_well()
        assert dl_value(p, [1.0]) == -1.0  # c(1) = c_0 + c_1

    def test_matches_grid_extremum_of_lagrangian(self, rng):
        p = ProblemInstance(
            (QuadraticForm([[0.3]], [0.8], 0.1), QuadraticForm([[1.0]], [-0.4], -0.5)),
            CanonicalFunction.indicator_cone(1),
        )
        h = 1e-4
        xs = np.arange(-200000, 200001) * h
        for s in (-2.0, 1.5, 4.0):
            A = 0.3 + s
            vals = 0.5 * A * xs**2 - (0.8 - 0.4 * s) * xs + (0.1 - 0.5 * s)
            target = vals.min() if A > 0 else vals.max()
            assert dl_value(p, [s]) == pytest.approx(target, abs=abs(A) * h**2 / 2 + 1e-12)
            i = np.argmin(np.abs(vals - target))
            assert lagrangian(p, [xs[i]], [s]) == pytest.approx(vals[i], abs=1e-12)


class TestLKKT:
    def test_example1_min_fails_psd(self):
        cert = check_j_lkkt(ConeProblem(instances.example1()), [1.0], [0.0])
        assert not cert.certified
        assert cert.violations == ["A(sigma) is not positive semidefinite"]

    def test_example1_max_certificate(self):
        cert = check_j_lkkt_max(ConeProblem(instances.example1()), [1.0], [0.0])
        assert cert.kind == "GlobalMax" and cert.unique
        assert cert.chain == {"q0": 0.5, "L": 0.5, "D_L": 0.5}
        xs = np.linspace(-1, 1, 20001)
        assert np.max(-0.5 * xs**2 + xs) == 0.5

    def test_trust_region_min(self):
        p = instances.trust_region()
        x, s = instances.trust_region_kkt_pair(p)
        cert = check_j_lkkt(ConeProblem(p), x, s)
        assert cert.kind == "GlobalMin" and cert.unique
        gmin, res = trust_region_grid_min(p)
        assert eval_q0(p, x) - 1e-9 <= gmin <= eval_q0(p, x) + res

    def test_sign_flipped_trust_region_max(self):
        p = instances.trust_region(sign=-1.0)
        x, s = instances.trust_region_kkt_pair(p, maximize=True)
        cert = check_j_lkkt_max(ConeProblem(p), x, s)
        assert cert.kind == "GlobalMax"
        gmax, res = disk_grid_max(p)
        assert eval_q0(p, x) - res <= gmax <= eval_q0(p, x) + 1e-9

    def test_equality_reverse_engineered_chain(self, rng):
        v = CanonicalFunction.indicator_cone(2, [0, 1])
        p, x, s = instances.reverse_engineer(rng, 3, 2, v, sign=1.0)
        cert = check_j_lkkt(ConeProblem(p), x, s)
        assert cert.kind == "GlobalMin"
        vals = list(cert.chain.values())
        assert max(vals) - min(vals) <= 1e-10 * (1 + abs(vals[0]))

    def test_complementarity_violation_names_index(self):
        # q_1(x) = x^2/2 - 1/2 < 0 at x = 0.5 with sigma_1 = 1
        p = ProblemInstance(
            (QuadraticForm([[1.0]], [-0.5], 0.0), QuadraticForm([[1.0]], [0.0], -0.5)),
            CanonicalFunction.indicator_cone(1),
        )
        cert = check_j_lkkt(ConeProblem(p), [0.5], [1.0])
        assert not cert.certified
        assert any(v.startswith("complementarity 0") for v in cert.violations)

    def test_wrong_sign_reported(self):
        cert = check_j_lkkt(ConeProblem(instances.example1()), [1.0], [-0.5])
        assert any(v.startswith("sign 0") for v in cert.violations)


class TestEqualityDuality:
    def test_two_point_set(self):
        cp = ConeProblem(instances.equality_circle())
        lo = equality_duality(cp, [-1.0], [1.0])
        assert lo.min_certificate and not lo.max_certificate
        assert lo.chain["q0"] == -1.0 == min(-1.0, 1.0)
        hi = equality_duality(cp, [1.0], [-1.0])
        assert hi.max_certificate and not hi.min_certificate
        assert hi.chain["q0"] == hi.chain["L"] == hi.chain["D_L"] == 1.0

    def test_not_critical(self):
        with pytest.raises(NotCritical):
            equality_duality(ConeProblem(instances.equality_circle()), [0.5], [1.0])

    def test_needs_all_equalities(self):
        with pytest.raises(ValueError):
            equality_duality(ConeProblem(instances.example1()), [1.0], [0.0])


class TestDualProperties:
    @given(seeds)
    def test_weak_duality(self, seed):
        rng = np.random.default_rng(seed)
        p = instances.trust_region(A0=np.diag(rng.uniform(-2, 2, 2)), b0=rng.normal(size=2))
        xs = rng.normal(size=(200, 2))
        xs = xs / np.maximum(1.0, np.linalg.norm(xs, axis=1, keepdims=True))
        lo = max(0.0, -np.linalg.eigvalsh(p.As[0])[0]) + 1e-6
        for s in rng.uniform(lo, lo + 5, 10):
            if classify_sigma(p, [s]).in_Ycol_plus:
                d = dl_value(p, [s]) - p.v.conjugate([s])
                assert all(d <= eval_q0(p, x) + 1e-9 for x in xs)

    def test_concave_on_psd_and_convex_on_nsd(self):
        p = instances.example1()
        for a, b in [(1.2, 3.0), (1.01, 10.0)]:
            assert dl_value(p, [(a + b) / 2]) >= 0.5 * (dl_value(p, [a]) + dl_value(p, [b]))
        for a, b in [(-3.0, 0.5), (0.1, 0.9)]:
            assert dl_value(p, [(a + b) / 2]) <= 0.5 * (dl_value(p, [a]) + dl_value(p, [b]))
