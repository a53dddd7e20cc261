from typing import Collection, List

from models.graph import VertexId, WeightedDigraph
from models.trace import PolicyTrace
from policies.base_policy import BasePolicy, PolicyContext
from policies.feedback import BaseFeedback


def frequency_baseline(g: WeightedDigraph, k: int, exclude: Collection[VertexId] = ()) -> List[VertexId]:
    """The k most popular vertices by self-loop weight w_ii, ties by ascending id."""
    if k <= 0:
        return []
    excluded = set(exclude)
    ranked = sorted((v for v in range(g.n) if v not in excluded), key=lambda v: (-g.self_loop_weight(v), v))
    return ranked[:k]


class FrequencyPolicy(BasePolicy):
    """Ignores order and states; the given prefix is excluded from the ranking."""

    def __init__(self):
        super().__init__(name="frequency")

    def run(self, context: PolicyContext, feedback: BaseFeedback) -> PolicyTrace:
        sigma = frequency_baseline(context.structure, context.k, exclude=context.given)
        stop_reason = "budget" if len(sigma) == context.k else "exhausted"
        return PolicyTrace(policy=self.name, given=list(context.given), sigma=sigma, stop_reason=stop_reason)
