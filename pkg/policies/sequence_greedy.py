"""
Adaptive Sequence-Greedy and its non-adaptive counterpart.

Each iteration scores every valid edge by its conditional expected marginal
benefit Delta(e | psi_sigma^E), appends the argmax edge's missing endpoints,
observes them, and conditions on every edge the new sequence induces.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from models.graph import SequenceStructure, WeightedDigraph, check_sequence
from models.states import EdgeStateRule, PartialRealization, StateDistribution, observe
from models.trace import PolicyStep, PolicyTrace
from policies.base_policy import BasePolicy, PolicyContext, select_edge
from policies.feedback import BaseFeedback, NeverReveal
from utility.base_utility import BaseUtility
from utility.gains import edge_one_probabilities
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def seed_given(structure: SequenceStructure, given: Sequence[int]) -> Tuple[Tuple[int, ...], PartialRealization]:
    """The given prefix is known to be in state 1."""
    given = check_sequence(given, structure.n)
    psi = PartialRealization()
    for v in given:
        psi = observe(psi, v, 1)
    return given, psi


def greedy_trace(
    structure: SequenceStructure,
    h: BaseUtility,
    rule: EdgeStateRule,
    marginals: StateDistribution,
    feedback: BaseFeedback,
    k: int,
    tie: str,
    given: Sequence[int],
    width: int,
    name: str,
) -> PolicyTrace:
    """Shared loop of the digraph greedy (width 2) and its hypergraph form (width r)."""
    given, psi = seed_given(structure, given)
    sigma = list(given)
    picks = []
    steps = []
    stop_reason = "budget"
    index = structure.edge_index

    while len(picks) <= k - width:
        mask = structure.valid_mask(sigma)
        candidates = np.flatnonzero(mask)
        if candidates.size == 0:
            stop_reason = "exhausted"
            break

        p_one = edge_one_probabilities(structure, psi, rule, marginals)
        context = {e: float(p_one[index[e]]) for e in structure.induced(sigma)}
        gains = h.expected_gains(structure, p_one, context)
        chosen = select_edge(gains, candidates, tie)
        edge = structure.edge_ids[chosen]

        selected = set(sigma)
        appended = [v for v in dict.fromkeys(edge) if v not in selected]
        observed = {}
        for v in appended:
            sigma.append(v)
            picks.append(v)
            s = feedback.reveal(v)
            if s is not None:
                psi = observe(psi, v, s)
                observed[v] = s
        logger.debug(f"{name}: picked {edge} (delta={gains[chosen]:.6f}), appended {appended}, observed {observed}")
        steps.append(
            PolicyStep(
                edge=edge,
                delta=float(gains[chosen]),
                appended=appended,
                observed=observed,
                valid_count=int(candidates.size),
            )
        )

    return PolicyTrace(
        policy=name,
        given=list(given),
        sigma=picks,
        steps=steps,
        final_psi=psi,
        stop_reason=stop_reason,
    )


def adaptive_sequence_greedy(
    g: WeightedDigraph,
    h: BaseUtility,
    rule: EdgeStateRule,
    marginals: StateDistribution,
    feedback: BaseFeedback,
    k: int,
    tie: str = "lowest-id",
    given: Sequence[int] = (),
) -> PolicyTrace:
    return greedy_trace(g, h, rule, marginals, feedback, k, tie, given, width=2, name="adaptive-greedy")


def nonadaptive_sequence_greedy(
    g: WeightedDigraph,
    h: BaseUtility,
    rule: EdgeStateRule,
    marginals: StateDistribution,
    k: int,
    tie: str = "lowest-id",
    given: Sequence[int] = (),
) -> PolicyTrace:
    """Sequence-Greedy without states: every Delta uses the prior marginals."""
    return greedy_trace(g, h, rule, marginals, NeverReveal(), k, tie, given, width=2, name="greedy")


class AdaptiveSequenceGreedy(BasePolicy):
    def __init__(self):
        super().__init__(name="adaptive-greedy")

    def run(self, context: PolicyContext, feedback: BaseFeedback) -> PolicyTrace:
        return adaptive_sequence_greedy(
            context.structure, context.utility, context.rule, context.marginals,
            feedback, context.k, context.tie, context.given,
        )


class SequenceGreedy(BasePolicy):
    def __init__(self):
        super().__init__(name="greedy")

    def run(self, context: PolicyContext, feedback: BaseFeedback) -> PolicyTrace:
        return nonadaptive_sequence_greedy(
            context.structure, context.utility, context.rule, context.marginals,
            context.k, context.tie, context.given,
        )
