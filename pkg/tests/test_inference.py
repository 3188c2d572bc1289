"""Exact network queries checked against dense-table enumeration."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beliefpool import (
    BayesNet,
    Cpt,
    ZeroEvidence,
    bn_to_joint,
    conditional_probability,
    marginal,
    query_conditional,
    query_event_marginal,
)
from beliefpool.sampling import random_bn

CHAIN = BayesNet((Cpt(0, (), (0.2,)), Cpt(1, (0,), (0.6, 0.4))))


def random_assignment(rng, m, variables):
    return {int(j): bool(rng.integers(0, 2)) for j in variables}


class TestQueryConditional:
    def test_chain_by_hand(self):
        # P(1=T) = 0.2*0.4 + 0.8*0.6 = 0.56; Bayes gives P(0=T | 1=T).
        assert query_event_marginal(CHAIN, {1: True}) == pytest.approx(0.56)
        got = query_conditional(CHAIN, {0: True}, {1: True})
        assert got == pytest.approx(0.2 * 0.4 / 0.56)

    def test_empty_target_is_certain(self):
        assert query_conditional(CHAIN, {}) == 1.0
        assert query_conditional(CHAIN, {}, {1: True}) == 1.0

    def test_no_evidence_is_marginal(self):
        assert query_conditional(CHAIN, {1: True}) == pytest.approx(0.56)

    def test_overlapping_target_and_evidence_rejected(self):
        with pytest.raises(ValueError):
            query_conditional(CHAIN, {0: True}, {0: True})

    def test_zero_evidence_raises(self):
        net = BayesNet((Cpt(0, (), (1.0,)), Cpt(1, (0,), (0.5, 0.5))))
        with pytest.raises(ZeroEvidence):
            query_conditional(net, {1: True}, {0: False})

    @given(seed=st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=60, deadline=None)
    def test_matches_dense_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(2, 8))
        net = random_bn(rng, m, max_parents=3)
        dense = bn_to_joint(net)

        n_target = int(rng.integers(1, 3))
        pool = list(rng.permutation(m))
        target = random_assignment(rng, m, pool[:n_target])
        n_evidence = int(rng.integers(0, 3))
        evidence = random_assignment(rng, m, pool[n_target : n_target + n_evidence])

        got = query_conditional(net, target, evidence)
        want = conditional_probability(dense, target, evidence)
        assert got == pytest.approx(want, abs=1e-12)


class TestQueryEventMarginal:
    @given(seed=st.integers(min_value=0, max_value=100_000))
    @settings(max_examples=40, deadline=None)
    def test_matches_dense_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(1, 8))
        net = random_bn(rng, m, max_parents=3)
        dense = bn_to_joint(net)
        k = int(rng.integers(1, m + 1))
        event = random_assignment(rng, m, rng.permutation(m)[:k])
        got = query_event_marginal(net, event)
        assert got == pytest.approx(marginal(dense, event), abs=1e-12)

    def test_empty_event(self):
        assert query_event_marginal(CHAIN, {}) == 1.0

    def test_full_instantiation(self):
        got = query_event_marginal(CHAIN, {0: True, 1: False})
        assert got == pytest.approx(0.2 * 0.6)
