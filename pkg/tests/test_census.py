import math
from fractions import Fraction

import pytest

from carmlab.census import (DEFAULT_BRUTE_FORCE_CAP, CensusMethod, WitnessCensus,
                            WitnessKind, census_brute_force, census_carmichael_exact,
                            classify_witness)
from carmlab.errors import CapExceededError, DomainError
from carmlab.factoring import factorize, primes_up_to


def naive_census(n):
    """Oracle: classify every base one at a time."""
    count_a = count_b = count_c = 0
    for a in range(1, n):
        if math.gcd(a, n) > 1:
            count_c += 1
        elif pow(a, n - 1, n) == 1:
            count_a += 1
        else:
            count_b += 1
    return count_a, count_b, count_c


class TestClassifyWitness:
    def test_coprime_witness(self):
        assert classify_witness(2, 21) is WitnessKind.NON_TRIVIAL_WITNESS

    def test_one_is_never_a_witness(self):
        for n in (3, 21, 561, 1729):
            assert classify_witness(1, n) is WitnessKind.NON_WITNESS

    def test_shared_factor(self):
        assert classify_witness(3, 561) is WitnessKind.TRIVIAL_WITNESS

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            classify_witness(0, 21)
        with pytest.raises(DomainError):
            classify_witness(21, 21)
        with pytest.raises(DomainError):
            classify_witness(1, 2)

    def test_agrees_with_census_counts(self):
        for n in (21, 45, 91, 561):
            kinds = [classify_witness(a, n) for a in range(1, n)]
            census = census_brute_force(n)
            assert kinds.count(WitnessKind.NON_WITNESS) == census.count_A
            assert kinds.count(WitnessKind.NON_TRIVIAL_WITNESS) == census.count_B
            assert kinds.count(WitnessKind.TRIVIAL_WITNESS) == census.count_C


class TestCensusBruteForce:
    def test_reference_n21(self):
        census = census_brute_force(21)
        assert (census.count_A, census.count_B, census.count_C) == (4, 8, 8)
        assert census.proportion_witnesses == Fraction(4, 5)

    def test_prime_has_only_non_witnesses(self):
        census = census_brute_force(3)
        assert (census.count_A, census.count_B, census.count_C) == (2, 0, 0)
        assert census.proportion_witnesses == 0

    def test_classic_carmichael(self):
        census = census_brute_force(561)
        assert census.count_A == 320
        assert census.count_B == 0
        assert census.proportion_witnesses == Fraction(240, 560)

    def test_matches_naive_oracle(self):
        for n in range(3, 400):
            census = census_brute_force(n)
            assert (census.count_A, census.count_B, census.count_C) == naive_census(n)

    def test_above_cap_points_to_exact_census(self):
        with pytest.raises(CapExceededError, match="census_carmichael_exact"):
            census_brute_force(DEFAULT_BRUTE_FORCE_CAP + 1)

    def test_small_n_rejected(self):
        with pytest.raises(DomainError):
            census_brute_force(2)

    def test_sweep_properties_to_1e4(self):
        # composite with a coprime witness -> proportion > 1/2; prime -> 0
        prime = set(primes_up_to(10_000))
        half = Fraction(1, 2)
        for n in range(3, 10_001):
            census = census_brute_force(n)
            assert census.count_A + census.count_B + census.count_C == n - 1
            if n in prime:
                assert census.proportion_witnesses == 0
            elif census.count_B > 0:
                assert census.proportion_witnesses > half, n


class TestCensusCarmichaelExact:
    def test_worked_examples(self):
        assert census_carmichael_exact(1105, factorize(1105)).proportion_witnesses \
            == 1 - Fraction(768, 1104)
        assert census_carmichael_exact(1729, factorize(1729)).proportion_witnesses \
            == Fraction(1, 4)

    def test_catalog_tail_row(self):
        n = 11947816523586945
        census = census_carmichael_exact(n, factorize(n))
        assert round(float(census.proportion_witnesses) * 100, 2) == 53.26

    def test_agrees_with_brute_force_for_all_small_carmichaels(self):
        carmichaels = [561, 1105, 1729, 2465, 2821, 6601, 8911, 10585, 15841,
                       29341, 41041, 46657, 52633, 62745, 63973, 75361]
        for n in carmichaels:
            exact = census_carmichael_exact(n, factorize(n))
            brute = census_brute_force(n)
            assert (exact.count_A, exact.count_B, exact.count_C) == \
                (brute.count_A, brute.count_B, brute.count_C)

    def test_prime_input_allowed(self):
        census = census_carmichael_exact(97, factorize(97))
        assert census.count_A == 96 and census.count_C == 0

    def test_other_composite_rejected(self):
        with pytest.raises(DomainError, match="neither prime nor Carmichael"):
            census_carmichael_exact(21, factorize(21))

    def test_subject_mismatch_rejected(self):
        with pytest.raises(DomainError):
            census_carmichael_exact(561, factorize(1105))

    def test_method_tag(self):
        assert census_carmichael_exact(561, factorize(561)).method \
            is CensusMethod.TOTIENT_EXACT


class TestWitnessCensusType:
    def test_partition_enforced(self):
        with pytest.raises(DomainError):
            WitnessCensus(21, 4, 8, 9, CensusMethod.BRUTE_FORCE)

    def test_totient_method_requires_no_coprime_witnesses(self):
        with pytest.raises(DomainError):
            WitnessCensus(21, 4, 8, 8, CensusMethod.TOTIENT_EXACT)

    def test_json_round_trip_fields(self):
        record = census_brute_force(21).to_json_dict()
        assert record == {"n": 21, "count_A": 4, "count_B": 8, "count_C": 8,
                          "proportion_num": 4, "proportion_den": 5,
                          "method": "BruteForce"}
