import math
from fractions import Fraction

import pytest

from ksecretary import (
    DominatingProbSpec,
    OptimisticK2Report,
    PolicyKind,
    RangeError,
    classical_secretary_prob,
    count_P1_minus_P1prime,
    cr_optimistic_k2_exact,
    cr_single_ref_exact,
    delta_optimistic_k2,
    falling_factorial,
    hypergeo_all_blue,
    p2_optimistic_k2,
    p_dom_exact,
    p_item_exact,
    slot_weights,
    validate_params,
)
from ksecretary.exact import optimistic_tail_sum

from conftest import iter_optimistic_k2_configs, iter_single_ref_configs


class TestFallingFactorial:
    def test_empty_product(self):
        assert falling_factorial(5, 0) == 1

    def test_small(self):
        assert falling_factorial(5, 2) == 20

    def test_against_factorial_quotient(self):
        assert falling_factorial(30, 15) == math.factorial(30) // math.factorial(15)

    def test_errors(self):
        with pytest.raises(RangeError):
            falling_factorial(3, 4)
        with pytest.raises(RangeError):
            falling_factorial(-1, 0)
        with pytest.raises(RangeError):
            falling_factorial(3, -1)


class TestHypergeoAllBlue:
    def test_all_blue(self):
        assert hypergeo_all_blue(5, 5, 2) == 1

    def test_small(self):
        assert hypergeo_all_blue(4, 2, 2) == Fraction(1, 6)

    def test_more_draws_than_blue(self):
        assert hypergeo_all_blue(4, 2, 3) == 0

    def test_errors(self):
        with pytest.raises(RangeError):
            hypergeo_all_blue(4, 2, 5)
        with pytest.raises(RangeError):
            hypergeo_all_blue(4, 5, 2)


class TestDominatingProb:
    def test_classical_case_value(self):
        # 24 permutations counted by hand give 11/24, which is also
        # (1/4) * (1 + 1/2 + 1/3)
        params = validate_params(4, 1, 2, 1)
        expected = Fraction(1, 4) * (1 + Fraction(1, 2) + Fraction(1, 3))
        assert expected == Fraction(11, 24)
        assert p_dom_exact(params, 0) == expected

    def test_matches_oracle_counts(self, oracle_cache):
        for n, k, t, r in [(5, 2, 3, 1), (6, 2, 3, 2), (7, 3, 4, 2)]:
            params = validate_params(n, k, t, r)
            table = oracle_cache(n, k, t, r)
            for j in range(k):
                assert p_dom_exact(params, j) == table.prob(1, j + 1), (n, k, t, r, j)

    def test_float_mode_agrees_with_rational(self):
        for n, k, t, r in iter_single_ref_configs(9):
            params = validate_params(n, k, t, r)
            for j in range(k):
                exact_value = p_dom_exact(params, j, "rational")
                float_value = p_dom_exact(params, j, "float")
                assert float_value == pytest.approx(float(exact_value), rel=1e-12)

    def test_spec_carries_the_two_products(self):
        spec = DominatingProbSpec(validate_params(8, 3, 4, 2), j=2)
        assert spec.kappa == falling_factorial(2 - 1 + 2, 2)
        assert spec.tau == falling_factorial(4 - 1, 2)

    def test_slot_out_of_range(self):
        params = validate_params(6, 2, 3, 1)
        with pytest.raises(RangeError):
            p_dom_exact(params, 2)
        with pytest.raises(RangeError):
            p_dom_exact(params, -1)


class TestPerItemProb:
    def test_all_items_dominating_when_r_equals_k(self, oracle_cache):
        params = validate_params(7, 2, 4, 2)
        for i in (1, 2):
            for j in (1, 2):
                assert p_item_exact(params, i, j) == p_dom_exact(params, j - 1)

    def test_mid_item_first_slot_reduces_to_second_slot(self):
        params = validate_params(6, 2, 3, 1)
        assert p_item_exact(params, 2, 1) == p_dom_exact(params, 1)

    def test_mid_item_late_slot_matches_dominating(self):
        params = validate_params(7, 3, 4, 1)
        assert p_item_exact(params, 3, 2) == p_dom_exact(params, 2)

    def test_matches_oracle_everywhere(self, oracle_cache):
        for n, k, t, r in [(6, 2, 3, 1), (7, 3, 4, 1), (7, 3, 4, 2), (8, 3, 4, 2)]:
            params = validate_params(n, k, t, r)
            table = oracle_cache(n, k, t, r)
            for i in range(1, k + 1):
                for j in range(1, k + 1):
                    assert p_item_exact(params, i, j) == table.prob(i, j), (n, k, t, r, i, j)

    def test_rank_beyond_k_unsupported(self):
        params = validate_params(6, 2, 3, 1)
        with pytest.raises(RangeError):
            p_item_exact(params, 3, 1)
        with pytest.raises(RangeError):
            p_item_exact(params, 1, 3)


class TestSlotWeights:
    def test_boundary_consistent_when_r_equals_k(self):
        # both branch expressions give k for the first slot at r = k
        assert slot_weights(3, 3)[0] == 3

    def test_sum_is_k_squared(self):
        for k in range(1, 30):
            for r in range(1, k + 1):
                assert sum(slot_weights(k, r)) == k * k

    def test_known_small_cases(self):
        assert slot_weights(2, 1) == (1, 3)
        assert slot_weights(3, 2) == (2, 4, 3)


class TestCompetitiveRatioSingleRef:
    def test_budget_one_is_classical_formula(self):
        for n, t in [(4, 2), (6, 3), (9, 5)]:
            params = validate_params(n, 1, t, 1)
            assert cr_single_ref_exact(params) == classical_secretary_prob(n, t)

    def test_matches_oracle(self, oracle_cache):
        for n, k, t, r in [(6, 2, 3, 1), (8, 3, 4, 2)]:
            params = validate_params(n, k, t, r)
            assert cr_single_ref_exact(params) == oracle_cache(n, k, t, r).ratio_topk()

    def test_weighted_form_equals_per_item_average(self):
        # the slot-weight recombination is the same sum as the plain
        # (1/k) * sum over items and slots of the per-item probabilities
        for n, k, t, r in [(6, 2, 3, 1), (7, 3, 4, 2), (8, 3, 5, 1)]:
            params = validate_params(n, k, t, r)
            direct = (
                sum(
                    p_item_exact(params, i, j)
                    for i in range(1, k + 1)
                    for j in range(1, k + 1)
                )
                / k
            )
            assert cr_single_ref_exact(params) == direct


class TestClassicalSecretary:
    def test_two_items(self):
        assert classical_secretary_prob(2, 2) == Fraction(1, 2)

    def test_four_items(self):
        assert classical_secretary_prob(4, 2) == Fraction(11, 24)

    def test_near_optimal_large_n(self):
        value = classical_secretary_prob(100, 38)
        assert Fraction("0.37") < value < Fraction("0.3720")
        assert classical_secretary_prob(100, 38, "float") == pytest.approx(
            float(value), rel=1e-12
        )

    def test_errors(self):
        with pytest.raises(RangeError):
            classical_secretary_prob(4, 1)
        with pytest.raises(RangeError):
            classical_secretary_prob(4, 5)


class TestOptimisticK2:
    def test_p2_is_classical_by_contract(self):
        assert p2_optimistic_k2(12, 5) == classical_secretary_prob(12, 5)

    def test_p2_matches_oracle(self, oracle_cache):
        for n, t in [(6, 3), (7, 4)]:
            table = oracle_cache(n, 2, t, None, PolicyKind.OPTIMISTIC)
            assert p2_optimistic_k2(n, t) == table.item_prob(2)

    def test_delta_matches_oracle_event_count(self):
        for n, t in [(6, 3), (7, 4)]:
            count = count_P1_minus_P1prime(n, t)
            assert delta_optimistic_k2(n, t) == Fraction(count, math.factorial(n))

    def test_tail_sum_single_term_boundary(self):
        # with the sum starting at its own last index the value collapses to
        # one term; the surplus itself requires t <= n-2, so probe the sum
        for n in (7, 9, 12):
            t = n - 1
            assert optimistic_tail_sum(n, t) == Fraction(1, (n - 3) * (n - 2))
        with pytest.raises(RangeError):
            delta_optimistic_k2(9, 8)

    def test_ratio_is_p2_plus_half_delta(self):
        for n, t in iter_optimistic_k2_configs(8):
            assert cr_optimistic_k2_exact(n, t) == p2_optimistic_k2(n, t) + delta_optimistic_k2(n, t) / 2

    def test_ratio_matches_oracle(self, oracle_cache):
        for n, t in [(6, 3), (8, 4)]:
            table = oracle_cache(n, 2, t, None, PolicyKind.OPTIMISTIC)
            assert cr_optimistic_k2_exact(n, t) == table.ratio_topk()

    def test_report_fields(self):
        report = OptimisticK2Report.compute(8, 4)
        assert report.p1 == report.p2 + report.delta
        assert report.ratio == report.p2 + report.delta / 2
        assert 0 <= report.p2 <= report.p1 <= 1

    def test_sampling_too_short(self):
        with pytest.raises(RangeError):
            delta_optimistic_k2(8, 2)
