import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdt import instances
from cdt.exceptions import ProblemDocumentError
from cdt.io import default_seeds, dump_problem, load_problem, problem_from_dict, problem_to_dict

seeds = st.integers(0, 2**31 - 1)
kinds = st.sampled_from(list(instances.SMOOTH_KINDS) + ["IndicatorCone"])


def assert_same_problem(a, b):
    assert a.v == b.v or (a.v.kind == b.v.kind and a.v.params == b.v.params)
    for qa, qb in zip(a.quadratics, b.quadratics):
        np.testing.assert_array_equal(qa.A, qb.A)
        np.testing.assert_array_equal(qa.b, qb.b)
        assert qa.c == qb.c


class TestRoundTrip:
    @given(seeds, kinds)
    def test_bit_identical(self, seed, kind):
        rng = np.random.default_rng(seed)
        v = instances.random_v(rng, 3, kind)
        p, _, s = instances.reverse_engineer(rng, 2, 3, v)
        text = json.dumps(problem_to_dict(p, [s]))
        q, seeds_back = problem_from_dict(json.loads(text))
        assert_same_problem(p, q)
        np.testing.assert_array_equal(seeds_back[0], s)

    def test_file(self, tmp_path):
        p = instances.example1()
        path = tmp_path / "ex1.json"
        dump_problem(p, path)
        q, seeds_back = load_problem(path)
        assert_same_problem(p, q)
        assert seeds_back is None


class TestErrors:
    def base(self):
        return problem_to_dict(instances.example1())

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.pop("m"),
            lambda d: d.update(n="1"),
            lambda d: d.update(schema_version="2.0"),
            lambda d: d["quadratics"].pop(),
            lambda d: d["quadratics"][0].update(A=[1.0, 2.0]),
            lambda d: d["quadratics"][1].update(b=["x"]),
            lambda d: d["v"].update(kind="Cubic"),
            lambda d: d["v"].update(params={"J": [3]}),
            lambda d: d.update(seeds=[[0.0, 1.0]]),
        ],
    )
    def test_rejects(self, mutate):
        doc = self.base()
        mutate(doc)
        with pytest.raises(ProblemDocumentError):
            problem_from_dict(doc)

    def test_asymmetric_matrix(self):
        doc = problem_to_dict(instances.trust_region())
        doc["quadratics"][0]["A"] = [1.0, 2.0, 0.0, 1.0]
        with pytest.raises(ProblemDocumentError):
            problem_from_dict(doc)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ProblemDocumentError):
            load_problem(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProblemDocumentError):
            load_problem(tmp_path / "absent.json")


def test_default_seeds():
    got = default_seeds(2)
    want = [[0, 0], [0.5, 0], [-0.5, 0], [0, 0.5], [0, -0.5]]
    np.testing.assert_array_equal(np.array(got), want)
