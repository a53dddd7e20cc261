from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from models.states import PartialRealization

StopReason = Literal["budget", "exhausted", "target", "dead-end"]


class PolicyStep(BaseModel):
    edge: Tuple[int, ...]
    delta: float
    appended: List[int]
    observed: Dict[int, int] = Field(default_factory=dict)
    valid_count: int = 0
    frontier: Optional[int] = None


class PolicyTrace(BaseModel):
    """The sequence a policy built plus every observation it made.

    ``sigma`` holds only the recommended vertices; ``given`` is the prefix the
    policy started from (known to be in state 1) and never counts toward k.
    """

    policy: str
    given: List[int] = Field(default_factory=list)
    sigma: List[int] = Field(default_factory=list)
    steps: List[PolicyStep] = Field(default_factory=list)
    final_psi: PartialRealization = Field(default_factory=PartialRealization)
    stop_reason: StopReason = "budget"
    frontier: Optional[int] = None

    def full_sequence(self) -> Tuple[int, ...]:
        return tuple(self.given) + tuple(self.sigma)

    def same_choices(self, other: "PolicyTrace") -> bool:
        """Equal sequences, chosen edges and Delta values (observations ignored)."""
        return (
            self.sigma == other.sigma
            and [(s.edge, s.delta, s.appended) for s in self.steps]
            == [(s.edge, s.delta, s.appended) for s in other.steps]
        )
