"""
f_avg(pi) = E[h(E(sigma_pi_phi), phi^E)]: the expected value of a policy,
re-running the policy once per realization with that realization as feedback.
"""
import logging
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from models.graph import SequenceStructure, VertexId
from models.states import (
    EdgeStateRule,
    Realization,
    StateDistribution,
    edge_state,
    iter_realizations,
    sample_realization,
    start_vertex_rule,
)
from models.trace import PolicyTrace
from policies.feedback import BaseFeedback, RealizationFeedback
from utils.constants import LOG_LEVEL_VALUE, LOG_FORMAT
from utils.errors import InputError
from .base_utility import BaseUtility

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

TraceFn = Callable[[BaseFeedback, int], PolicyTrace]


def sequence_value(
    structure: SequenceStructure,
    h: BaseUtility,
    sequence: Sequence[VertexId],
    realization: Realization,
    rule: EdgeStateRule,
) -> float:
    """f(sigma, phi): h over the state-1 edges sigma induces."""
    states = realization.as_mapping()
    return h.value(e for e in structure.induced(sequence) if edge_state(e, states, rule) == 1)


def policy_expected_value(
    trace_fn: TraceFn,
    structure: SequenceStructure,
    h: BaseUtility,
    dist: StateDistribution,
    k: int,
    rule: Optional[EdgeStateRule] = None,
    mode: Literal["exact", "mc"] = "exact",
    samples: int = 1000,
    seed: int = 0,
) -> float:
    rule = rule or start_vertex_rule()
    if mode == "exact":
        weighted = iter_realizations(dist, structure.n)
    elif mode == "mc":
        if samples < 1:
            raise InputError(f"Monte-Carlo mode needs at least one sample, got {samples}")
        seeds = np.random.SeedSequence(seed).generate_state(samples)
        weighted = ((sample_realization(dist, int(s)), 1.0 / samples) for s in seeds)
    else:
        raise InputError(f"unknown expectation mode '{mode}', expected 'exact' or 'mc'")

    total = 0.0
    for realization, prob in weighted:
        trace = trace_fn(RealizationFeedback(realization), k)
        total += prob * sequence_value(structure, h, trace.full_sequence(), realization, rule)
    logger.debug(f"f_avg = {total:.6f} ({mode}, k={k})")
    return total
