import io
import json
import math
import random

import pytest

from qualimeter.stats import (
    IterationSnapshot,
    RankSeries,
    UseCase,
    UseCaseModel,
    average_ranks,
    domain_coupling_cf,
    sdi,
    spearman,
    use_case_cohesion_global,
    use_case_cohesion_local,
    z_normalize,
)
from qualimeter import mood
from conftest import make_field, make_model, make_type, random_model


def spearman_oracle(perm) -> float:
    """Closed-form on a permutation of 0..n-1 against the identity."""
    n = len(perm)
    d2 = sum((i - p) ** 2 for i, p in enumerate(perm))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


class TestAverageRanks:
    def test_strictly_increasing(self):
        assert average_ranks([10, 20, 30]) == [1.0, 2.0, 3.0]

    def test_ties_share_the_average(self):
        assert average_ranks([5, 1, 5, 2]) == [3.5, 1.0, 3.5, 2.0]

    def test_all_equal(self):
        assert average_ranks([7, 7, 7]) == [2.0, 2.0, 2.0]

    def test_rank_sum_is_invariant(self):
        rng = random.Random(31)
        for _ in range(50):
            n = rng.randint(1, 40)
            values = [rng.randint(0, 10) for _ in range(n)]
            assert sum(average_ranks(values)) == pytest.approx(n * (n + 1) / 2)


class TestSpearman:
    def test_identity_and_reversal_across_sizes(self):
        for n in range(2, 51):
            values = list(range(n))
            same = RankSeries.from_values(values, values)
            assert spearman(same) == pytest.approx(1.0, abs=1e-12)
            flipped = RankSeries.from_values(values, values[::-1])
            assert spearman(flipped) == pytest.approx(-1.0, abs=1e-12)

    def test_worked_example(self):
        series = RankSeries.from_values([1, 2, 3, 4], [2, 1, 4, 3])
        assert spearman(series) == pytest.approx(0.6)

    def test_random_permutations_match_closed_form(self):
        rng = random.Random(20240821)
        for _ in range(500):
            n = rng.randint(2, 50)
            perm = list(range(n))
            rng.shuffle(perm)
            series = RankSeries.from_values(list(range(n)), perm)
            assert spearman(series) == pytest.approx(
                spearman_oracle(perm), abs=1e-12)

    def test_symmetry(self):
        rng = random.Random(8)
        a = [rng.random() for _ in range(12)]
        b = [rng.random() for _ in range(12)]
        assert spearman(RankSeries.from_values(a, b)) == pytest.approx(
            spearman(RankSeries.from_values(b, a)))

    def test_length_mismatch_and_tiny_series_rejected(self):
        with pytest.raises(ValueError):
            RankSeries((1.0, 2.0), (1.0,))
        with pytest.raises(ValueError):
            RankSeries.from_values([1], [1])


class TestZNormalize:
    def test_three_point_series(self):
        z = z_normalize([1, 2, 3])
        assert z == pytest.approx([-1.224744871, 0.0, 1.224744871])

    def test_post_conditions(self):
        rng = random.Random(41)
        for _ in range(30):
            values = [rng.uniform(-100, 100) for _ in range(rng.randint(2, 50))]
            z = z_normalize(values)
            assert sum(z) / len(z) == pytest.approx(0.0, abs=1e-9)
            var = sum(v * v for v in z) / len(z)
            assert var == pytest.approx(1.0, abs=1e-9)

    def test_idempotent(self):
        values = [3.0, 9.0, 1.0, 4.0]
        once = z_normalize(values)
        assert z_normalize(once) == pytest.approx(once)

    def test_zero_variance_rejected(self):
        with pytest.raises(ValueError, match="zero variance"):
            z_normalize([4, 4, 4])

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            z_normalize([1])


class TestSdi:
    def test_add_and_delete(self):
        prev = IterationSnapshot("1", frozenset({"A", "B", "C"}))
        nxt = IterationSnapshot("2", frozenset({"A", "B", "D"}))
        assert sdi(prev, nxt) == (1, 1, 0, 2)

    def test_identical_snapshots(self):
        snap = IterationSnapshot("1", frozenset({"A", "B"}))
        assert sdi(snap, snap) == (0, 0, 0, 0)

    def test_rename_counts_as_change_only(self):
        prev = IterationSnapshot("1", frozenset({"A", "B", "C"}))
        nxt = IterationSnapshot("2", frozenset({"A", "B", "D"}),
                                renames={"C": "D"})
        assert sdi(prev, nxt) == (0, 0, 1, 1)

    def test_rename_map_must_be_injective(self):
        prev = IterationSnapshot("1", frozenset({"A", "B"}))
        nxt = IterationSnapshot("2", frozenset({"C"}),
                                renames={"A": "C", "B": "C"})
        with pytest.raises(ValueError):
            sdi(prev, nxt)

    def test_rename_source_must_exist(self):
        prev = IterationSnapshot("1", frozenset({"A"}))
        nxt = IterationSnapshot("2", frozenset({"B"}), renames={"Z": "B"})
        with pytest.raises(ValueError):
            sdi(prev, nxt)

    def test_snapshot_from_file(self):
        doc = {"iteration": 3, "classes": ["A", "B"], "renames": {"A": "A2"}}
        snap = IterationSnapshot.from_file(io.StringIO(json.dumps(doc)))
        assert snap.label == "3"
        assert snap.classes == frozenset({"A", "B"})
        assert snap.renames == {"A": "A2"}


def two_use_case_model(pairs):
    return UseCaseModel(
        use_cases=(UseCase("Checkout", ("s1", "s2", "s3")),
                   UseCase("Login", ("s4", "s5"))),
        similar_pairs=frozenset(frozenset(p) for p in pairs))


class TestUseCaseCohesion:
    def test_local_fully_similar(self):
        model = two_use_case_model([("s1", "s2"), ("s1", "s3"), ("s2", "s3")])
        assert use_case_cohesion_local(model, "Checkout") == 1.0

    def test_local_one_pair_of_three(self):
        model = two_use_case_model([("s1", "s2")])
        assert use_case_cohesion_local(model, "Checkout") == pytest.approx(1 / 3)

    def test_local_no_similar_pairs(self):
        model = two_use_case_model([])
        assert use_case_cohesion_local(model, "Checkout") == 0.0

    def test_local_single_scenario_is_undefined(self):
        model = UseCaseModel(
            use_cases=(UseCase("Tiny", ("s1",)),), similar_pairs=frozenset())
        assert use_case_cohesion_local(model, "Tiny") is None

    def test_local_unknown_use_case(self):
        with pytest.raises(KeyError):
            use_case_cohesion_local(two_use_case_model([]), "Nope")

    def test_global_four_similar_pairs_over_ten(self):
        # 5 scenarios -> 10 possible pairs; 4 similar -> 1 - 0.4 = 0.6
        model = two_use_case_model(
            [("s1", "s2"), ("s3", "s4"), ("s1", "s5"), ("s2", "s3")])
        assert use_case_cohesion_global(model) == pytest.approx(0.6)

    def test_global_bounds(self):
        assert use_case_cohesion_global(two_use_case_model([])) == 1.0
        all_pairs = [(f"s{i}", f"s{j}") for i in range(1, 6)
                     for j in range(i + 1, 6)]
        assert use_case_cohesion_global(two_use_case_model(all_pairs)) == 0.0

    def test_global_undefined_below_two_scenarios(self):
        model = UseCaseModel(use_cases=(UseCase("Tiny", ("s1",)),),
                             similar_pairs=frozenset())
        assert use_case_cohesion_global(model) is None

    def test_pair_referencing_unknown_scenario_rejected(self):
        with pytest.raises(ValueError):
            two_use_case_model([("s1", "zz")])

    def test_from_file(self):
        doc = {"useCases": [{"name": "A", "scenarios": ["s1", "s2"]}],
               "similarPairs": [["s1", "s2"]]}
        model = UseCaseModel.from_file(io.StringIO(json.dumps(doc)))
        assert use_case_cohesion_local(model, "A") == 1.0


class TestDomainCoupling:
    def test_delegates_to_coupling_factor(self):
        m = make_model(
            make_type("p.A", fields=(make_field("b", "p.B"),)),
            make_type("p.B"),
        )
        assert domain_coupling_cf(m) == mood.cf(m) == pytest.approx(0.5)

    def test_agrees_on_random_models(self):
        rng = random.Random(27)
        for _ in range(20):
            m = random_model(rng, max_classes=8)
            assert domain_coupling_cf(m) == mood.cf(m)
