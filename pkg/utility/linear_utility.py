from typing import FrozenSet, Iterable, Mapping

import numpy as np

from models.graph import EdgeId, SequenceStructure, canonical_edge_key
from .base_utility import BaseUtility


class LinearUtility(BaseUtility):
    """Modular h: sum of weights of the state-1 edges. Unit weights count them."""

    def name(self):
        return "linear"

    @classmethod
    def counting(cls, edges: Iterable[EdgeId]) -> "LinearUtility":
        return cls({e: 1.0 for e in edges})

    @classmethod
    def from_structure(cls, structure: SequenceStructure) -> "LinearUtility":
        return cls(structure.weights)

    def _value(self, ones: FrozenSet[EdgeId]) -> float:
        return float(sum(self.weights.get(e, 0.0) for e in sorted(ones, key=canonical_edge_key)))

    def expected_gain(self, edge: EdgeId, p_one: float, context: Mapping[EdgeId, float]) -> float:
        return p_one * self.weights.get(edge, 0.0)

    def expected_gains(
        self, structure: SequenceStructure, p_one: np.ndarray, context: Mapping[EdgeId, float]
    ) -> np.ndarray:
        weights, _ = self.aligned(structure)
        return p_one * weights
