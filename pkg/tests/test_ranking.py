import numpy as np
import pytest

from conerank.assess import AssessmentSpec, DomainError, pdia_witness
from conerank.cones import AttributeVector
from conerank.data_io import fixture_epi_sample
from conerank.efficiency import AlternativeSet
from conerank.ranking import (
    EPI_WEIGHTS,
    WeightVector,
    apply_weights,
    compare_rankings,
    epi_composite,
    rank,
)


def make_set(points, labels):
    return AlternativeSet.from_points(points, labels)


UNIT3 = WeightVector((1.0, 1.0, 1.0))


class TestWeights:
    def test_apply(self):
        z = make_set([(50, 50, 50), (100, 0.5, 0.5)], "AB")
        w = apply_weights(z, EPI_WEIGHTS)
        assert w.alternatives[0].components == (19.0, 10.0, 21.0)
        assert w.alternatives[0].label == "A"
        assert w.alternatives[1].components[0] == 38.0

    def test_unit_weights_are_identity(self):
        z = make_set([(1.5, 2.5, 3.5)], "A")
        assert apply_weights(z, UNIT3).alternatives[0].components == (1.5, 2.5, 3.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            WeightVector((1.0, 0.0))
        with pytest.raises(ValueError):
            apply_weights(make_set([(1, 2)], "A"), UNIT3)


class TestComposite:
    def test_equal_inputs(self):
        assert epi_composite(50, 50, 50) == pytest.approx(50.0)

    def test_single_components(self):
        assert epi_composite(100, 0, 0) == pytest.approx(38.0)
        assert epi_composite(0, 100, 0) == pytest.approx(20.0)
        assert epi_composite(0, 0, 100) == pytest.approx(42.0)

    def test_finite_guard(self):
        with pytest.raises(ValueError):
            epi_composite(float("nan"), 0, 0)


class TestRank:
    def test_balance_ranking_prefers_even_profile(self):
        z = make_set([(19, 10, 21), (15, 15, 15)], "AB")
        result = rank(z, AssessmentSpec.generalized_leontief(-1.0 / 3.0), UNIT3)
        assert result.labels_in_order == ("B", "A")
        assert result.entries[0].score == pytest.approx(0.0)
        assert result.entries[1].score == pytest.approx(10 - 50 / 3)

    def test_min_form_respects_dominance(self):
        z = make_set([(2, 2), (1, 1)], "AB")
        result = rank(z, AssessmentSpec.leontief(), WeightVector((1.0, 1.0)))
        assert result.labels_in_order == ("A", "B")

    def test_competition_ranks_and_tie_groups(self):
        z = make_set([(3, 3), (2, 4), (4, 2), (1, 1)], list("ABCD"))
        result = rank(z, AssessmentSpec.mean_order(1.0), WeightVector((1.0, 1.0)))
        assert [e.rank for e in result.entries] == [1, 1, 1, 4]
        assert [e.label for e in result.entries] == ["A", "B", "C", "D"]
        assert result.tie_groups == (("A", "B", "C"),)

    def test_permutation_stability(self):
        pts = [(3, 1), (1, 3), (2, 2), (4, 4)]
        labels = list("ABCD")
        base = rank(
            make_set(pts, labels), AssessmentSpec.leontief(), WeightVector((1, 1))
        )
        order = [2, 0, 3, 1]
        shuffled = rank(
            make_set([pts[i] for i in order], [labels[i] for i in order]),
            AssessmentSpec.leontief(),
            WeightVector((1, 1)),
        )
        assert base.entries == shuffled.entries
        assert base.tie_groups == shuffled.tie_groups

    def test_score_rank_coherence(self):
        rng = np.random.default_rng(5)
        z = make_set(rng.uniform(1, 9, size=(30, 3)).tolist(), None)
        result = rank(z, AssessmentSpec.mean_order(1.0), UNIT3)
        for a in result.entries:
            for b in result.entries:
                if a.rank < b.rank:
                    assert a.score > b.score

    def test_domain_violation_names_the_label(self):
        z = make_set([(1, 2), (-1, 2)], ["good", "bad"])
        with pytest.raises(DomainError, match="bad"):
            rank(z, AssessmentSpec.mean_order(0.5), WeightVector((1, 1)))

    def test_weight_scaling_covariance_for_balance_form(self):
        rng = np.random.default_rng(23)
        z = make_set(rng.uniform(1, 9, size=(12, 3)).tolist(), None)
        spec = AssessmentSpec.generalized_leontief(-0.25)
        base = rank(z, spec, UNIT3)
        scaled = rank(z, spec, WeightVector((2.5, 2.5, 2.5)))
        assert base.labels_in_order == scaled.labels_in_order
        for e_base, e_scaled in zip(base.entries, scaled.entries):
            assert e_scaled.score == pytest.approx(2.5 * e_base.score, rel=1e-12)

    def test_dominance_consistent_specs_respect_weighted_dominance(self):
        rng = np.random.default_rng(29)
        specs = [
            AssessmentSpec.mean_order(1.0),
            AssessmentSpec.leontief(),
            AssessmentSpec.augmented_leontief(0.5),
        ]
        z = make_set(rng.uniform(1, 9, size=(20, 3)).tolist(), None)
        w = WeightVector((0.5, 1.0, 2.0))
        weighted = apply_weights(z, w)
        for spec in specs:
            result = rank(z, spec, w)
            for a in weighted.alternatives:
                for b in weighted.alternatives:
                    if a.label == b.label:
                        continue
                    cmp = [x - y for x, y in zip(a.components, b.components)]
                    if all(c >= 0 for c in cmp) and any(c > 0 for c in cmp):
                        assert result.rank_of(a.label) <= result.rank_of(b.label)

    def test_reversal_pair_ranks_backwards_under_balance_form(self):
        spec = AssessmentSpec.generalized_leontief(-0.5)
        low, high = pdia_witness(spec, 2)
        z = AlternativeSet(
            (low.relabel("balanced"), high.relabel("dominating"))
        )
        result = rank(z, spec, WeightVector((1.0, 1.0)))
        assert result.rank_of("balanced") < result.rank_of("dominating")


class TestCompareRankings:
    def _ranked(self, labels_scores):
        pts = [(s, s) for _, s in labels_scores]
        z = make_set(pts, [lab for lab, _ in labels_scores])
        return rank(z, AssessmentSpec.leontief(), WeightVector((1.0, 1.0)))

    def test_identity(self):
        r = self._ranked([("A", 3), ("B", 2), ("C", 1)])
        cmp = compare_rankings(r, r)
        assert cmp.kendall_tau == pytest.approx(1.0)
        assert set(cmp.top_k_overlap.values()) == {1.0}
        assert cmp.max_displacement == 0

    def test_exact_reversal(self):
        r1 = self._ranked([("A", 5), ("B", 4), ("C", 3), ("D", 2), ("E", 1)])
        r2 = self._ranked([("A", 1), ("B", 2), ("C", 3), ("D", 4), ("E", 5)])
        cmp = compare_rankings(r1, r2)
        assert cmp.kendall_tau == pytest.approx(-1.0)
        assert cmp.max_displacement == 4

    def test_single_swap(self):
        r1 = self._ranked([("A", 3), ("B", 2), ("C", 1)])
        r2 = self._ranked([("A", 2), ("B", 3), ("C", 1)])
        cmp = compare_rankings(r1, r2)
        assert cmp.kendall_tau == pytest.approx(1.0 / 3.0)
        assert cmp.max_displacement == 1
        assert cmp.top_k_overlap[5] == 1.0

    def test_label_mismatch(self):
        r1 = self._ranked([("A", 2), ("B", 1)])
        r2 = self._ranked([("A", 2), ("C", 1)])
        with pytest.raises(ValueError):
            compare_rankings(r1, r2)


class TestFixtureRankings:
    def test_four_leaders(self):
        z = fixture_epi_sample()
        cases = [
            (AssessmentSpec.mean_order(1.0), "Denmark"),
            (AssessmentSpec.generalized_leontief(0.0), "Iceland"),
            (AssessmentSpec.generalized_leontief(-0.25), "Ireland"),
            (AssessmentSpec.generalized_leontief(-1.0 / 3.0), "Türkiye"),
        ]
        for spec, leader in cases:
            result = rank(z, spec, EPI_WEIGHTS)
            assert result.entries[0].label == leader, spec

    def test_composite_column_equals_weighted_sum_ranking(self):
        z = fixture_epi_sample()
        result = rank(z, AssessmentSpec.mean_order(1.0), EPI_WEIGHTS)
        for entry in result.entries:
            alt = z.alternatives[z.index_of(entry.label)]
            assert entry.score == pytest.approx(epi_composite(*alt.components))
