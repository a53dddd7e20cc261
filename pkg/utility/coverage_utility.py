from typing import Dict, FrozenSet, Iterable, Mapping

import numpy as np

from models.graph import EdgeId, SequenceStructure, canonical_edge_key
from .base_utility import BaseUtility


def coverage_value(ones: Iterable[EdgeId], weights: Mapping[EdgeId, float]) -> float:
    """h(E1) = sum_j [1 - prod_{(i,j) in E1} (1 - w_ij)]."""
    edges = sorted(ones, key=canonical_edge_key)
    if not edges:
        return 0.0
    destinations = np.fromiter((e[-1] for e in edges), dtype=int, count=len(edges))
    w = np.fromiter((weights[e] for e in edges), dtype=float, count=len(edges))
    _, inverse = np.unique(destinations, return_inverse=True)
    miss = np.ones(inverse.max() + 1)
    np.multiply.at(miss, inverse, 1.0 - w)
    return float(np.sum(1.0 - miss))


class CoverageUtility(BaseUtility):
    """Probabilistic coverage over edge destinations; an edge's weight is w_ij."""

    def name(self):
        return "coverage"

    @classmethod
    def from_structure(cls, structure: SequenceStructure) -> "CoverageUtility":
        return cls(structure.weights)

    def _value(self, ones: FrozenSet[EdgeId]) -> float:
        return coverage_value(ones, self.weights)

    def _miss(self, edge: EdgeId, context: Mapping[EdgeId, float]) -> float:
        miss = 1.0
        for c in sorted(context, key=canonical_edge_key):
            if c != edge and c[-1] == edge[-1]:
                miss *= 1.0 - context[c] * self.weights[c]
        return miss

    def expected_gain(self, edge: EdgeId, p_one: float, context: Mapping[EdgeId, float]) -> float:
        # destinations are covered independently, so the product stays exact
        return p_one * self.weights[edge] * self._miss(edge, context)

    def expected_gains(
        self, structure: SequenceStructure, p_one: np.ndarray, context: Mapping[EdgeId, float]
    ) -> np.ndarray:
        weights, destinations = self.aligned(structure)
        miss: Dict[int, float] = {}
        for c in sorted(context, key=canonical_edge_key):
            j = c[-1]
            miss[j] = miss.get(j, 1.0) * (1.0 - context[c] * self.weights[c])
        factors = np.ones(structure.n)
        for j, m in miss.items():
            factors[j] = m
        return p_one * weights * factors[destinations]
