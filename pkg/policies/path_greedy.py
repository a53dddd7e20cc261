"""
Path-constrained greedy for link navigation.

Candidates are restricted to links leaving the current frontier page. A pick
the user confirms (state 1) becomes the new frontier; a rejected pick stays
in the sequence but the frontier does not move.
"""
import logging
from typing import Optional, Sequence

import numpy as np

from models.graph import VertexId, WeightedDigraph
from models.states import EdgeStateRule, StateDistribution, observe
from models.trace import PolicyStep, PolicyTrace
from policies.base_policy import BasePolicy, PolicyContext, select_edge
from policies.feedback import BaseFeedback
from policies.sequence_greedy import seed_given
from utility.base_utility import BaseUtility
from utility.gains import edge_one_probabilities
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import InputError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def path_constrained_greedy(
    g: WeightedDigraph,
    h: BaseUtility,
    rule: EdgeStateRule,
    marginals: StateDistribution,
    feedback: BaseFeedback,
    k: int,
    start: VertexId,
    target_stop: Optional[VertexId] = None,
    tie: str = "lowest-id",
    given: Sequence[int] = (),
) -> PolicyTrace:
    if not 0 <= start < g.n:
        raise InputError(f"unknown start vertex {start} (graph has {g.n} vertices)")
    given = tuple(given)
    if start not in given:
        given = given + (start,)
    given, psi = seed_given(g, given)

    if not g.out_edges.get(start):
        logger.warning(f"start vertex {g.label(start)} has no outgoing links, nothing to recommend")
        return PolicyTrace(policy="path-greedy", given=list(given), final_psi=psi, stop_reason="dead-end", frontier=start)

    sigma = list(given)
    selected = np.zeros(g.n, dtype=bool)
    selected[list(given)] = True
    picks = []
    steps = []
    frontier = start
    stop_reason = "budget"
    index = g.edge_index

    while len(picks) < k:
        mask = (g.source_array == frontier) & ~selected[g.destination_array]
        candidates = np.flatnonzero(mask)
        if candidates.size == 0:
            stop_reason = "exhausted"
            break

        p_one = edge_one_probabilities(g, psi, rule, marginals)
        context = {e: float(p_one[index[e]]) for e in g.induced(sigma)}
        gains = h.expected_gains(g, p_one, context)
        chosen = select_edge(gains, candidates, tie)
        edge = g.edge_ids[chosen]
        v = edge[1]

        sigma.append(v)
        picks.append(v)
        selected[v] = True
        observed = {}
        s = feedback.reveal(v)
        if s is not None:
            psi = observe(psi, v, s)
            observed[v] = s
        steps.append(
            PolicyStep(
                edge=edge,
                delta=float(gains[chosen]),
                appended=[v],
                observed=observed,
                valid_count=int(candidates.size),
                frontier=frontier,
            )
        )
        if s == 1:
            frontier = v
            if target_stop is not None and v == target_stop:
                stop_reason = "target"
                break

    logger.debug(f"path-greedy from {g.label(start)}: {len(picks)} picks, frontier {g.label(frontier)}, {stop_reason}")
    return PolicyTrace(
        policy="path-greedy",
        given=list(given),
        sigma=picks,
        steps=steps,
        final_psi=psi,
        stop_reason=stop_reason,
        frontier=frontier,
    )


class PathConstrainedGreedy(BasePolicy):
    tasks = ("navigation",)

    def __init__(self):
        super().__init__(name="path-greedy")

    def run(self, context: PolicyContext, feedback: BaseFeedback) -> PolicyTrace:
        if context.start is None:
            raise InputError("path-greedy needs a start vertex")
        return path_constrained_greedy(
            context.structure, context.utility, context.rule, context.marginals,
            feedback, context.k, context.start, context.target_stop, context.tie, context.given,
        )
