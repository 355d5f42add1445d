from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksecretary import (
    AcceptanceRecord,
    ArrivalOrder,
    Policy,
    PolicyKind,
    payoff_topk,
    run_optimistic,
    run_single_ref,
    validate_params,
)


def order_of(*ranks):
    return ArrivalOrder.from_ranks(ranks)


class TestSingleRefTraces:
    def test_best_item_in_sampling_blocks_everything(self):
        params = validate_params(4, 1, 2, 1)
        rec = run_single_ref(params, order_of(1, 2, 3, 4))
        assert rec.accepts == ()
        assert rec.reference_ranks == (1,)

    def test_accepts_best_after_sampling(self):
        params = validate_params(4, 1, 2, 1)
        rec = run_single_ref(params, order_of(2, 1, 3, 4))
        assert rec.accepts == ((2, 1),)

    def test_two_accepts_in_arrival_order(self):
        params = validate_params(5, 2, 3, 1)
        rec = run_single_ref(params, order_of(3, 5, 2, 1, 4))
        assert rec.accepts == ((3, 2), (4, 1))
        assert rec.reference_ranks == (3,)


class TestOptimisticTraces:
    def test_references_consumed_worst_to_best(self):
        params = validate_params(5, 2, 3)
        rec = run_optimistic(params, order_of(3, 4, 5, 1, 2))
        assert rec.reference_ranks == (3, 4)
        assert [rank for _, rank in rec.accepts] == [1, 2]

    def test_second_accept_needs_best_reference(self):
        params = validate_params(5, 2, 3)
        rec = run_optimistic(params, order_of(4, 3, 1, 5, 2))
        assert rec.accepts == ((3, 1), (5, 2))

    def test_sticks_to_reference_order_even_after_strong_accept(self):
        # first accept already beats the best sampling item; the second
        # comparison still uses the best sampling item, not something stricter
        params = validate_params(6, 2, 3)
        rec = run_optimistic(params, order_of(4, 5, 1, 3, 2, 6))
        assert rec.accepts == ((3, 1), (4, 3))


class TestPayoff:
    def test_full_hit(self):
        rec = AcceptanceRecord(accepts=((3, 1), (4, 2)), reference_ranks=(5,))
        assert payoff_topk(rec, 2) == 1

    def test_half_hit(self):
        rec = AcceptanceRecord(accepts=((3, 1), (4, 5)), reference_ranks=(6,))
        assert payoff_topk(rec, 2) == Fraction(1, 2)

    def test_no_accepts(self):
        rec = AcceptanceRecord(accepts=(), reference_ranks=(1,))
        assert payoff_topk(rec, 2) == 0


def _valid_param_orders(max_n=9):
    def build(draw_tuple):
        n, k_seed, t_seed, r_seed, shuffle_seed = draw_tuple
        k_max = (n - 1) // 2
        k = 1 + k_seed % k_max
        t = (k + 1) + t_seed % (n - k - k)
        r = 1 + r_seed % k
        from ksecretary import random_arrival_order

        return validate_params(n, k, t, r), random_arrival_order(n, shuffle_seed)

    return st.tuples(
        st.integers(3, max_n),
        st.integers(0, 10**6),
        st.integers(0, 10**6),
        st.integers(0, 10**6),
        st.integers(0, 2**63),
    ).map(build)


class TestPolicyProperties:
    @given(_valid_param_orders())
    @settings(max_examples=150, deadline=None)
    def test_accepts_beat_the_reference(self, case):
        params, order = case
        rec = run_single_ref(params, order)
        (reference,) = rec.reference_ranks
        assert len(rec.accepts) <= params.k
        positions = [pos for pos, _ in rec.accepts]
        assert positions == sorted(positions)
        assert all(pos >= params.t for pos in positions)
        assert all(rank < reference for _, rank in rec.accepts)

    @given(_valid_param_orders())
    @settings(max_examples=150, deadline=None)
    def test_top_r_item_after_sampling_accepted_unless_budget_spent(self, case):
        # an item ranked at or above the reference rank always beats the
        # reference, so arriving after the sampling it is only ever rejected
        # when k accepts already happened
        params, order = case
        rec = run_single_ref(params, order)
        accepted_positions = [pos for pos, _ in rec.accepts]
        for pos in range(params.t, params.n + 1):
            rank = order.seq[pos - 1]
            if rank <= params.r and (pos, rank) not in rec.accepts:
                earlier = [p for p in accepted_positions if p < pos]
                assert len(earlier) == params.k

    @given(_valid_param_orders())
    @settings(max_examples=150, deadline=None)
    def test_optimistic_accepts_beat_their_reference(self, case):
        params, order = case
        rec = run_optimistic(params, order)
        refs = rec.reference_ranks
        for slot, (pos, rank) in enumerate(rec.accepts):
            assert rank < refs[params.k - 1 - slot]
            assert pos >= params.t


class TestBudgetOneEquivalence:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_policies_agree_exhaustively(self, n):
        for t in range(2, n):
            params = validate_params(n, 1, t, 1)
            for seq in permutations(range(1, n + 1)):
                order = ArrivalOrder(seq)
                assert run_single_ref(params, order) == run_optimistic(params, order)

    @given(st.integers(3, 40), st.integers(0, 2**63))
    @settings(max_examples=80, deadline=None)
    def test_policies_agree_on_random_orders(self, n, seed):
        from ksecretary import random_arrival_order

        t = 2 + seed % (n - 2)
        params = validate_params(n, 1, t, 1)
        order = random_arrival_order(n, seed)
        assert run_single_ref(params, order) == run_optimistic(params, order)


class TestPolicyWrapper:
    def test_run_dispatch(self):
        params = validate_params(5, 2, 3, 1)
        order = order_of(3, 5, 2, 1, 4)
        assert Policy(PolicyKind.SINGLE_REF, params).run(order) == run_single_ref(params, order)
        assert Policy(PolicyKind.OPTIMISTIC, params).run(order) == run_optimistic(params, order)

    def test_single_ref_requires_r(self):
        params = validate_params(5, 2, 3)
        with pytest.raises(ValueError, match="reference rank"):
            Policy(PolicyKind.SINGLE_REF, params)

    def test_length_mismatch(self):
        params = validate_params(5, 2, 3, 1)
        with pytest.raises(ValueError, match="length"):
            run_single_ref(params, order_of(2, 1, 3))
