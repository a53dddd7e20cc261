from abc import ABC, abstractmethod
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from models.graph import SequenceStructure
from models.states import EdgeStateRule, StateDistribution, start_vertex_rule
from models.trace import PolicyTrace
from policies.feedback import BaseFeedback
from utility.base_utility import BaseUtility
from utils.constants import TIE_TOLERANCE
from utils.errors import InputError

# A tie rule picks one index out of the ascending array of tied edge indices.
TIE_RULES: Dict[str, Callable[[np.ndarray], int]] = {
    "lowest-id": lambda tied: int(tied[0]),
    "highest-id": lambda tied: int(tied[-1]),
}


def select_edge(gains: np.ndarray, candidates: np.ndarray, tie: str = "lowest-id") -> int:
    """argmax of ``gains`` over ``candidates``; gains within TIE_TOLERANCE of the max are tied."""
    if tie not in TIE_RULES:
        raise InputError(f"unknown tie rule '{tie}', expected one of {sorted(TIE_RULES)}")
    values = gains[candidates]
    best = values.max()
    tied = candidates[values >= best - TIE_TOLERANCE]
    return TIE_RULES[tie](tied)


class PolicyContext(BaseModel):
    """Everything a policy needs besides its feedback oracle."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    structure: SequenceStructure
    utility: BaseUtility
    marginals: StateDistribution
    k: int = Field(ge=0)
    rule: EdgeStateRule = Field(default_factory=start_vertex_rule)
    given: Tuple[int, ...] = ()
    start: Optional[int] = None
    target_stop: Optional[int] = None
    tie: str = "lowest-id"


class BasePolicy(ABC):
    """
    Abstract base class for all policies.
    Each policy must implement the `run` method, which builds one PolicyTrace
    from a context and a feedback oracle.
    """

    tasks: Tuple[str, ...] = ("purchase", "synthetic")

    def __init__(self, name: str = "base"):
        self.name = name

    @abstractmethod
    def run(self, context: PolicyContext, feedback: BaseFeedback) -> PolicyTrace:
        pass

    def supports(self, task: str) -> bool:
        return task in self.tasks
