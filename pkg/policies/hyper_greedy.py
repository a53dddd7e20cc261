"""
Adaptive Hyper Sequence-Greedy: the greedy loop over an ordered hypergraph.

A step appends every vertex of the chosen hyperedge that is not yet in the
sequence, in the hyperedge's order, so at most r vertices per step.
"""
from typing import Sequence

from models.graph import OrderedHypergraph
from models.states import EdgeStateRule, StateDistribution
from models.trace import PolicyTrace
from policies.base_policy import BasePolicy, PolicyContext
from policies.feedback import BaseFeedback
from policies.sequence_greedy import greedy_trace
from utility.base_utility import BaseUtility


def adaptive_hyper_sequence_greedy(
    h_graph: OrderedHypergraph,
    h: BaseUtility,
    rule: EdgeStateRule,
    marginals: StateDistribution,
    feedback: BaseFeedback,
    k: int,
    tie: str = "lowest-id",
    given: Sequence[int] = (),
) -> PolicyTrace:
    width = max(h_graph.r, 1)
    return greedy_trace(h_graph, h, rule, marginals, feedback, k, tie, given, width=width, name="hyper-greedy")


class HyperSequenceGreedy(BasePolicy):
    tasks = ("synthetic",)

    def __init__(self):
        super().__init__(name="hyper-greedy")

    def run(self, context: PolicyContext, feedback: BaseFeedback) -> PolicyTrace:
        return adaptive_hyper_sequence_greedy(
            context.structure, context.utility, context.rule, context.marginals,
            feedback, context.k, context.tie, context.given,
        )
