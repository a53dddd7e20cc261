"""
Feedback oracles: how a policy learns the state of a vertex after selecting it.
"""
from abc import ABC, abstractmethod
from typing import Collection, Mapping, Optional, Sequence

from models.graph import VertexId
from models.states import Realization, State


class BaseFeedback(ABC):
    adaptive: bool = True

    @abstractmethod
    def reveal(self, v: VertexId) -> Optional[State]:
        """State of v once selected, or None when nothing is revealed."""
        pass


class RealizationFeedback(BaseFeedback):
    def __init__(self, realization: Realization):
        self.realization = realization

    def reveal(self, v):
        return self.realization[v]


class NeverReveal(BaseFeedback):
    adaptive = False

    def reveal(self, v):
        return None


class ReplayFeedback(BaseFeedback):
    """Ground truth from held-out data: state 1 iff v is among ``positives``."""

    def __init__(self, positives: Collection[VertexId], truth: Optional[Mapping[VertexId, State]] = None):
        self.positives = frozenset(positives)
        self.truth = dict(truth or {})

    def reveal(self, v):
        if v in self.truth:
            return self.truth[v]
        return 1 if v in self.positives else 0


class NavigationFeedback(BaseFeedback):
    """
    Accepts a pick only if it is the user's actual next page from the current
    frontier; an accepted pick advances the frontier.
    """

    def __init__(self, path: Sequence[Optional[VertexId]], position: int):
        self.path = list(path)
        self.position = position

    @property
    def expected_next(self) -> Optional[VertexId]:
        if self.position + 1 < len(self.path):
            return self.path[self.position + 1]
        return None

    def reveal(self, v):
        if v is not None and v == self.expected_next:
            self.position += 1
            return 1
        return 0
