import numpy as np
import pytest

from ontomatch.aggregate import (
    StrategyConfig,
    constant_weight_matrix,
    feature_term,
    harmony_aggregate,
    harmony_of,
    hscw_matrix,
    hscw_pair,
    pointwise_aggregate,
    twostage_aggregate,
)
from ontomatch.alignment import SimilarityMatrix
from ontomatch.errors import ContractViolationError
from ontomatch.ontology import StructuralProfile, structural_profile

from conftest import bijective_rename


def matrix(cells, kinds=None):
    cells = np.asarray(cells, dtype=float)
    rows = tuple(f"r{i}" for i in range(cells.shape[0]))
    cols = tuple(f"c{j}" for j in range(cells.shape[1]))
    rk = kinds[0] if kinds else ("class",) * len(rows)
    ck = kinds[1] if kinds else ("class",) * len(cols)
    return SimilarityMatrix(rows, cols, rk, ck, ("o1", "o2"), cells)


def profile(sup=0, sub=0, depth=1, ins=0, prop=0, sib=0):
    return StructuralProfile(sup=sup, sub=sub, depth=depth, ins=ins, prop=prop, sib=sib)


class TestFeatureTerm:
    def test_equal_counts(self):
        assert feature_term(1, 1) == 0.0

    def test_both_zero(self):
        assert feature_term(0, 0) == 0.0

    def test_three_one(self):
        assert feature_term(3, 1) == 0.5

    def test_properties(self):
        rng = np.random.default_rng(9)
        for _ in range(500):
            a, b = int(rng.integers(0, 50)), int(rng.integers(0, 50))
            t = feature_term(a, b)
            assert 0.0 <= t <= 1.0
            assert t == feature_term(b, a)
            assert (t == 0.0) == (a == b)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            feature_term(-1, 2)


class TestHscwPair:
    def test_identical_profiles_weight_one(self, academic_ontology, student_report_ontology):
        p1 = structural_profile(academic_ontology, "Academic")
        p2 = structural_profile(student_report_ontology, "StudentReport")
        assert p1 == StructuralProfile(sup=1, sub=2, depth=2, ins=0, prop=2, sib=6)
        assert p1 == p2
        delta = hscw_pair(p1, p2)
        assert delta.ave == 0.0
        assert delta.hscw == 1.0

    def test_all_terms_positive(self):
        p1 = profile()  # bare root
        p2 = profile(sup=2, sub=3, depth=4, ins=1, prop=2, sib=5)
        delta = hscw_pair(p1, p2)
        for name in ("sup", "sub", "depth", "ins", "prop", "sib"):
            assert getattr(delta, name) > 0.0
        assert delta.hscw < 1.0

    def test_uniform_half(self):
        p1 = profile(sup=2, sub=2, depth=2, ins=2, prop=2, sib=2)
        p2 = profile(sup=6, sub=6, depth=6, ins=6, prop=6, sib=6)
        delta = hscw_pair(p1, p2)
        assert delta.sup == delta.sib == 0.5
        assert delta.ave == 0.5
        assert delta.hscw == 0.5

    def test_exact_arithmetic_invariants(self):
        rng = np.random.default_rng(21)
        for _ in range(1000):
            vals = rng.integers(0, 20, size=12)
            p1 = StructuralProfile(int(vals[0]), int(vals[1]), int(vals[2]) + 1,
                                   int(vals[3]), int(vals[4]), int(vals[5]))
            p2 = StructuralProfile(int(vals[6]), int(vals[7]), int(vals[8]) + 1,
                                   int(vals[9]), int(vals[10]), int(vals[11]))
            d = hscw_pair(p1, p2)
            assert d.ave == (d.sup + d.sub + d.depth + d.ins + d.prop + d.sib) / 6
            assert d.hscw == 1 - d.ave
            assert 0.0 <= d.hscw <= 1.0
            assert hscw_pair(p2, p1) == d
            assert hscw_pair(p1, p1).hscw == 1.0


class TestHscwMatrix:
    def test_self_match_class_diagonal(self, seed_ontology):
        W = hscw_matrix(seed_ontology, seed_ontology)
        for c in seed_ontology.classes:
            i = seed_ontology.entity_ids.index(c.id)
            assert W.cells[i, i] == 1.0

    def test_non_class_blocks_use_config(self, seed_ontology):
        W = hscw_matrix(seed_ontology, seed_ontology, StrategyConfig(non_class_w=0.25))
        ids = seed_ontology.entity_ids
        kinds = seed_ontology.entity_kinds
        for i, k1 in enumerate(kinds):
            for j, k2 in enumerate(kinds):
                if k1 == k2 != "class":
                    assert W.cells[i, j] == 0.25
                elif k1 != k2:
                    assert W.cells[i, j] == 0.0

    def test_rename_invariance(self, seed_ontology):
        renamed, _ = bijective_rename(seed_ontology)
        W1 = hscw_matrix(seed_ontology, seed_ontology)
        W2 = hscw_matrix(seed_ontology, renamed)
        np.testing.assert_array_equal(W1.cells, W2.cells)


class TestTwostage:
    def test_weight_one_returns_first(self):
        rng = np.random.default_rng(2)
        g, v, i = (matrix(rng.random((4, 5))) for _ in range(3))
        from ontomatch.aggregate import WeightMatrix
        W = WeightMatrix(g.row_ids, g.col_ids, g.row_kinds, g.col_kinds, np.ones((4, 5)))
        out = twostage_aggregate(g, v, i, W)
        np.testing.assert_array_equal(out.cells, g.cells)

    def test_weight_zero_returns_last(self):
        rng = np.random.default_rng(3)
        g, v, i = (matrix(rng.random((4, 5))) for _ in range(3))
        from ontomatch.aggregate import WeightMatrix
        W = WeightMatrix(g.row_ids, g.col_ids, g.row_kinds, g.col_kinds, np.zeros((4, 5)))
        out = twostage_aggregate(g, v, i, W)
        np.testing.assert_array_equal(out.cells, i.cells)

    def test_hand_example(self):
        g, v, i = matrix([[0.8]]), matrix([[0.4]]), matrix([[0.6]])
        from ontomatch.aggregate import WeightMatrix
        W = WeightMatrix(g.row_ids, g.col_ids, g.row_kinds, g.col_kinds,
                         np.array([[0.5]]))
        out = twostage_aggregate(g, v, i, W)
        assert out.cells[0, 0] == pytest.approx(0.6)

    def test_convexity(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            g, v, i = (matrix(rng.random((3, 4))) for _ in range(3))
            from ontomatch.aggregate import WeightMatrix
            W = WeightMatrix(g.row_ids, g.col_ids, g.row_kinds, g.col_kinds,
                             rng.random((3, 4)))
            out = twostage_aggregate(g, v, i, W)
            stack = np.stack([g.cells, v.cells, i.cells])
            assert (out.cells >= stack.min(axis=0)).all()
            assert (out.cells <= stack.max(axis=0)).all()

    def test_shape_mismatch(self):
        from ontomatch.aggregate import WeightMatrix
        g, v, i = matrix([[0.5]]), matrix([[0.5]]), matrix([[0.5]])
        W = WeightMatrix(("a", "b"), ("c",), ("class", "class"), ("class",),
                         np.zeros((2, 1)))
        with pytest.raises(ContractViolationError):
            twostage_aggregate(g, v, i, W)


class TestPointwise:
    def test_max(self):
        ms = [matrix([[0.2]]), matrix([[0.9]]), matrix([[0.5]])]
        assert pointwise_aggregate("max", ms).cells[0, 0] == 0.9

    def test_min(self):
        ms = [matrix([[0.2]]), matrix([[0.9]]), matrix([[0.5]])]
        assert pointwise_aggregate("min", ms).cells[0, 0] == 0.2

    def test_average(self):
        ms = [matrix([[0.2]]), matrix([[0.9]]), matrix([[0.4]])]
        assert pointwise_aggregate("average", ms).cells[0, 0] == pytest.approx(0.5)

    def test_sigmoid_center_maps_to_half(self):
        ms = [matrix([[0.5]]), matrix([[0.5]]), matrix([[0.5]])]
        out = pointwise_aggregate("sigmoid", ms, StrategyConfig(strategy="sigmoid"))
        assert out.cells[0, 0] == pytest.approx(0.5)

    def test_sigmoid_preserves_kind_blocking(self):
        kinds = ((("class", "property")), (("class", "property")))
        ms = [matrix([[1.0, 0.0], [0.0, 1.0]], kinds=kinds) for _ in range(2)]
        out = pointwise_aggregate("sigmoid", ms, StrategyConfig(strategy="sigmoid"))
        assert out.cells[0, 1] == 0.0
        assert out.cells[1, 0] == 0.0
        assert out.cells[0, 0] > 0.99

    def test_too_few_matrices(self):
        with pytest.raises(ValueError):
            pointwise_aggregate("max", [matrix([[0.5]])])

    def test_empty_list(self):
        with pytest.raises(ValueError):
            pointwise_aggregate("max", [])

    def test_grid_mismatch(self):
        with pytest.raises(ContractViolationError):
            pointwise_aggregate("max", [matrix([[0.5]]), matrix([[0.5, 0.5]])])


class TestHarmony:
    def test_identity_matrix(self):
        m = matrix(np.eye(4))
        assert harmony_of(m) == 1.0

    def test_constant_matrix(self):
        assert harmony_of(matrix(np.full((3, 3), 0.4))) == 0.0

    def test_hand_case(self):
        assert harmony_of(matrix([[0.9, 0.1], [0.8, 0.2]])) == 0.5

    def test_scaled_permutation(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            n = int(rng.integers(2, 6))
            perm = rng.permutation(n)
            cells = np.zeros((n, n))
            for i, j in enumerate(perm):
                cells[i, j] = rng.uniform(0.1, 1.0)
            assert harmony_of(matrix(cells)) == 1.0

    def test_empty_matrix(self):
        with pytest.raises(ValueError):
            harmony_of(matrix(np.zeros((0, 0))))

    def test_degenerate_weighting(self):
        strong = matrix([[0.9, 0.0], [0.0, 0.8]])      # h = 1
        flat = matrix([[0.5, 0.5], [0.5, 0.5]])        # h = 0
        out = harmony_aggregate([strong, flat])
        np.testing.assert_array_equal(out.cells, strong.cells)

    def test_equal_harmonies_reduce_to_mean(self):
        m1 = matrix([[0.9, 0.0], [0.0, 0.8]])
        m2 = matrix([[0.5, 0.0], [0.0, 0.7]])
        out = harmony_aggregate([m1, m2])
        np.testing.assert_allclose(out.cells, (m1.cells + m2.cells) / 2)

    def test_weighted_mix(self):
        m1 = matrix([[0.9, 0.1], [0.8, 0.2]])   # h = 0.5
        m2 = matrix([[0.6, 0.0], [0.0, 0.5]])   # h = 1.0
        out = harmony_aggregate([m1, m2])
        want = (0.5 * m1.cells + 1.0 * m2.cells) / 1.5
        np.testing.assert_allclose(out.cells, want)

    def test_all_zero_harmonies_fall_back_to_mean(self):
        m1 = matrix(np.full((2, 2), 0.4))
        m2 = matrix(np.full((2, 2), 0.8))
        out = harmony_aggregate([m1, m2])
        np.testing.assert_allclose(out.cells, np.full((2, 2), 0.6))
