"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` (or execute this file
directly) to see the per-criterion lines and timings.

Not covered here, by design: exact lower bounds on graph distances (showing
some pair in a 3x3 block algebra needs four edges would require a
non-existence certificate over the whole projective space) and anything about
infinite-dimensional algebras.
"""

import time

import numpy as np
import pytest

from orthograph import (
    AlgebraShape,
    Element,
    Projection,
    SmallAlgebra,
    bj_orthogonal,
    brute_force_min_lambda,
    connect,
    connect_direct_sum,
    direct_sum,
    is_right_invertible,
    mutual_strong,
    non_isolated_witness,
    projective_equal,
    sample_element,
    strong_bj,
    third_projection,
)
from orthograph.algebra import DEFAULT_TOLERANCES as TOL
from orthograph.suites import SUITES

BAND = 2 * TOL.orth

_E11 = Element([2], [np.diag([1.0, 0.0])])
_I2 = Element.identity([2])


class _Criterion:
    def __init__(self, label, budget_s):
        self.label = label
        self.budget = budget_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"{status} {self.label} ({elapsed:.1f}s, budget {self.budget:.0f}s)")
        if exc_type is None:
            assert elapsed < self.budget, f"{self.label} exceeded its runtime budget"
        return False


def test_criterion_mixed_direction_regression():
    with _Criterion("mixed-direction regression", 1.0):
        d1 = strong_bj(_I2, _E11)
        assert d1.verdict and abs(d1.margin) > BAND

        d2 = strong_bj(_E11, _I2)
        assert not d2.verdict and abs(d2.margin) > BAND

        m = mutual_strong(direct_sum(_I2, _E11), direct_sum(_E11, _I2))
        assert m.verdicts == (True, True)
        assert abs(m.forward.margin) > BAND and abs(m.backward.margin) > BAND


def test_criterion_oracle_consistency():
    with _Criterion("oracle consistency (500 pairs x 3 shapes)", 120.0):
        total = banded = 0
        for si, blocks in enumerate(([2], [3], [2, 2])):
            shape = AlgebraShape(blocks)
            rng = np.random.default_rng([97, si])
            profiles = ["full", "deficient:1", "projection:1"]
            for _ in range(500):
                a = sample_element(shape, profiles[int(rng.integers(3))], rng)
                b = sample_element(shape, profiles[int(rng.integers(3))], rng)
                dec = bj_orthogonal(a, b, want_certificate=False)
                total += 1
                if dec.indeterminate:
                    banded += 1
                    continue
                _, achieved = brute_force_min_lambda(a, b, grid_n=200, refine_steps=50)
                oracle_true = achieved >= a.norm() * (1.0 - TOL.orth)
                assert oracle_true == dec.verdict
        assert banded / total < 0.02


def test_criterion_isolated_vertex_characterization():
    with _Criterion("isolated-vertex characterization", 60.0):
        for si, blocks in enumerate(([2], [3], [2, 2])):
            shape = AlgebraShape(blocks)
            rng = np.random.default_rng([11, si])
            for _ in range(200):
                a = sample_element(shape, "full", rng)
                assert is_right_invertible(a, TOL)
            for _ in range(200):
                a = sample_element(shape, "deficient:1", rng)
                assert not is_right_invertible(a, TOL)
                w = non_isolated_witness(a, TOL)  # re-verified internally
                assert w.norm() > 0


def test_criterion_diameter_bound():
    with _Criterion("diameter bound (100 pairs x 5 shapes)", 180.0):
        for si, blocks in enumerate(([3], [4], [5], [2, 3], [3, 3])):
            shape = AlgebraShape(blocks)
            rng = np.random.default_rng([23, si])
            for _ in range(100):
                a = sample_element(shape, "deficient:1", rng)
                b = sample_element(shape, "deficient:1", rng)
                path = connect(a, b, TOL)
                assert path.length <= 4
                assert len(path.edge_decisions) == path.length
                for d in path.edge_decisions:
                    assert d.adjacent
                for u, v in zip(path.vertices, path.vertices[1:]):
                    assert not projective_equal(u, v, TOL)


def test_criterion_direct_sum_bound():
    with _Criterion("direct-sum bound (100 crossing pairs)", 60.0):
        rng = np.random.default_rng(31)
        for _ in range(100):
            x = direct_sum(
                sample_element([2], "deficient:1", rng),
                sample_element([2], "full", rng),
            )
            y = direct_sum(
                sample_element([2], "full", rng),
                sample_element([2], "deficient:1", rng),
            )
            path = connect_direct_sum(x, y, TOL, split=1)
            assert path.length <= 3
            if path.length == 3:
                # the crossing construction: each interior vertex occupies a
                # single summand
                for v in path.vertices[1:-1]:
                    zero_first = v.blocks[0].max() == 0.0
                    zero_second = v.blocks[1].max() == 0.0
                    assert zero_first != zero_second
        for _ in range(20):
            x = direct_sum(Element.zero([2]), sample_element([2], "deficient:1", rng))
            y = direct_sum(sample_element([2], "deficient:1", rng), Element.zero([2]))
            assert connect_direct_sum(x, y, TOL, split=1).length == 1


def test_criterion_large_blocks_three_edges():
    with _Criterion("large-block bound (100 pairs in [4,5])", 120.0):
        shape = AlgebraShape([4, 5])
        rng = np.random.default_rng(41)
        for _ in range(100):
            a = sample_element(shape, "deficient:1", rng)
            b = sample_element(shape, "deficient:1", rng)
            path = connect_direct_sum(a, b, TOL, split=1)
            assert path.length <= 3
            for d in path.edge_decisions:
                assert d.adjacent


def test_criterion_small_algebras():
    with _Criterion("small algebras (raises + neighborhood search)", 120.0):
        for blocks in ([1], [1, 1], [2]):
            shape = AlgebraShape(blocks)
            p = Projection.rank_one(shape, 0, np.eye(shape.blocks[0])[:, 0])
            q = Projection.rank_one(shape, shape.m - 1, np.eye(shape.blocks[-1])[:, 0])
            with pytest.raises(SmallAlgebra):
                third_projection(p, q, TOL)
            a = sample_element(shape, "full", 1)
            b = sample_element(shape, "full", 2)
            with pytest.raises(SmallAlgebra):
                connect(a, b, TOL)

        fn, _, _ = SUITES["small_algebra_behavior"]
        res = fn(50, 7, TOL, candidates_per_vertex=1000)
        assert res.passed, res.line()


def test_criterion_invariant_suites():
    with _Criterion("invariant suites (>= 500 samples each)", 180.0):
        names = (
            "abs_value_reduction",
            "ambient_invariance",
            "scalar_invariance",
            "state_witness_soundness",
            "projection_witness_soundness",
            "state_compression_identity",
            "top_projection_dominated",
            "join_annihilation",
            "rank_one_join_complement",
        )
        for name in names:
            fn, default, _ = SUITES[name]
            res = fn(max(500, default), 0, TOL)
            assert res.failures == 0, res.line()
            print("  " + res.line())


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v", "-s"]))
