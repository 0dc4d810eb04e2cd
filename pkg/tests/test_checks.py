import hashlib
import math
from fractions import Fraction

import pytest

from brauerloop import (
    REFERENCE,
    PartialPermutation,
    Permutation,
    concatenate_labels,
    groundstate,
    long_permutation_sequence,
    monte_carlo_crosscheck,
    permutation_weight_table,
    verify_degrees,
    verify_factorization,
    verify_integrality,
    verify_maximality,
    verify_sum_rule,
)

# Stored reference constants are write-once: any edit must show up here.
ORACLE_SHA256 = "171bc7e704bf6ac364cf0a5c04d85880c3b02f94b6475afdb2fca722d21e74c7"


def oracle_fingerprint():
    blob = repr((
        REFERENCE.s3_degrees,
        REFERENCE.rank4_degree_2431,
        REFERENCE.long_permutation_weights,
        REFERENCE.class_counts,
    )).encode()
    return hashlib.sha256(blob).hexdigest()


def test_reference_oracles_frozen():
    assert oracle_fingerprint() == ORACLE_SHA256


@pytest.fixture(scope="module")
def states():
    return {length: groundstate(length) for length in range(2, 9)}


class TestWeightTable:
    def test_s3_degree_table(self, states):
        table = permutation_weight_table(states[6])
        assert table == REFERENCE.s3_table()

    def test_l4_table(self, states):
        table = permutation_weight_table(states[4])
        assert table == {Permutation((1, 2)): 1, Permutation((2, 1)): 3}

    def test_l8_degree_of_2431(self, states):
        table = permutation_weight_table(states[8])
        assert table[Permutation((2, 4, 3, 1))] == 173

    def test_l5_partial_table(self, states):
        table = permutation_weight_table(states[5])
        assert table[PartialPermutation((2, None, 1))] == 7
        assert table[PartialPermutation((2, 1, None))] == 3
        assert table[PartialPermutation((1, None, 2))] == 1
        assert len(table) == 6


class TestConcatenation:
    def test_two_permutations(self):
        assert concatenate_labels(
            Permutation((2, 1)), Permutation((2, 1))
        ) == Permutation((2, 1, 4, 3))

    def test_permutation_then_partial(self):
        lab = concatenate_labels(Permutation((1,)), PartialPermutation((None, 1)))
        assert lab == PartialPermutation((1, None, 2))

    def test_partial_then_permutation(self):
        lab = concatenate_labels(PartialPermutation((None, 1)), Permutation((1,)))
        assert lab == PartialPermutation((None, 1, 2))

    def test_two_partials_rejected(self):
        with pytest.raises(TypeError):
            concatenate_labels(
                PartialPermutation((None, 1)), PartialPermutation((None, 1))
            )


class TestChecks:
    def test_integrality(self, states):
        for gs in states.values():
            result = verify_integrality(gs)
            assert result.status == "PASS", result

    def test_maximality(self, states):
        for length in (4, 6, 8):
            assert verify_maximality(states[length]).status == "PASS"

    def test_maximality_skips_odd(self, states):
        assert verify_maximality(states[5]).status == "SKIP"

    def test_sum_rules(self, states):
        for length, gs in states.items():
            result = verify_sum_rule(gs)
            assert result.status == "PASS", result

    def test_factorization_examples(self, states):
        table8 = permutation_weight_table(states[8])
        assert table8[Permutation((2, 1, 4, 3))] == 9  # 3 * 3
        table6 = permutation_weight_table(states[6])
        assert table6[Permutation((2, 1, 3))] == 3  # 3 * 1
        result = verify_factorization(states)
        assert result.status == "PASS", result

    def test_degrees(self, states):
        assert verify_degrees(states).status == "PASS"

    def test_degrees_skip_without_data(self, states):
        assert verify_degrees({2: states[2]}).status == "SKIP"

    def test_check_result_json_shape(self, states):
        obj = verify_integrality(states[4]).to_json_obj()
        assert set(obj) == {"check", "L", "status", "details"}


class TestSequence:
    def test_prefix(self, states):
        assert long_permutation_sequence(4, states) == [1, 3, 31, 1145]

    def test_n1(self, states):
        assert long_permutation_sequence(1, states) == [1]


class TestMonteCarlo:
    def test_l4_converges(self, states):
        report = monte_carlo_crosscheck(4, 1_000_000, seed=11, ground_state=states[4])
        # exact orbit probabilities are 6/7 and 1/7
        assert {e.exact for e in report.estimates} == {Fraction(6, 7), Fraction(1, 7)}
        assert report.within(4.0), report

    def test_l2_exact(self, states):
        report = monte_carlo_crosscheck(2, 1000, seed=0, ground_state=states[2])
        assert report.estimates[0].empirical == 1.0
        assert report.max_abs_z == 0.0

    def test_deterministic_under_seed(self, states):
        a = monte_carlo_crosscheck(5, 50_000, seed=42, ground_state=states[5])
        b = monte_carlo_crosscheck(5, 50_000, seed=42, ground_state=states[5])
        assert a == b

    def test_doubling_samples_stays_within_band(self, states):
        a = monte_carlo_crosscheck(4, 100_000, seed=3, ground_state=states[4])
        b = monte_carlo_crosscheck(4, 200_000, seed=3, ground_state=states[4])
        for ea, eb in zip(a.estimates, b.estimates):
            band = 5.0 * math.hypot(ea.stderr, eb.stderr)
            assert abs(ea.empirical - eb.empirical) <= band

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            monte_carlo_crosscheck(1, 1000, seed=0)
        with pytest.raises(ValueError):
            monte_carlo_crosscheck(4, 10, seed=0)
