import itertools
from abc import ABC, abstractmethod
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

import numpy as np
from cachetools import LRUCache

from models.graph import EdgeId, SequenceStructure, canonical_edge_key
from utils.constants import MAX_JOINT_EDGES
from utils.errors import CapacityError


class BaseUtility(ABC):
    """
    Weakly adaptive set submodular objective h over (edge set, edge states).

    Bundled utilities only look at edges in state 1: state-0 and unknown edges
    contribute nothing, so h(psi) is ``value`` of the state-1 part of psi.
    """

    def __init__(self, weights: Mapping[EdgeId, float], cache_size: int = 65536):
        self.weights: Dict[EdgeId, float] = dict(weights)
        self._cache = LRUCache(maxsize=cache_size)
        self._aligned_structure: Optional[SequenceStructure] = None
        self._aligned_arrays: Tuple[np.ndarray, np.ndarray] = (np.zeros(0), np.zeros(0, dtype=int))

    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def _value(self, ones: FrozenSet[EdgeId]) -> float:
        pass

    def value(self, ones: Iterable[EdgeId]) -> float:
        ones = frozenset(ones)
        if not ones:
            return 0.0
        cached = self._cache.get(ones)
        if cached is None:
            cached = self._value(ones)
            self._cache[ones] = cached
        return cached

    def evaluate(self, edge_states: Mapping[EdgeId, int], edges: Optional[Iterable[EdgeId]] = None) -> float:
        """h(E1, states): value of the edges of ``edges`` (default: all keys) whose state is 1."""
        edges = edge_states.keys() if edges is None else edges
        return self.value(e for e in edges if edge_states.get(e) == 1)

    def gain(self, edge: EdgeId, ones: FrozenSet[EdgeId]) -> float:
        if edge in ones:
            return 0.0
        return self.value(ones | {edge}) - self.value(ones)

    def expected_gain(self, edge: EdgeId, p_one: float, context: Mapping[EdgeId, float]) -> float:
        """
        E[h(S + e) - h(S)] where e is in state 1 with probability ``p_one`` and
        every context edge c is in state 1 independently with probability context[c].
        """
        if p_one == 0.0:
            return 0.0
        certain = frozenset(c for c, p in context.items() if p == 1.0 and c != edge)
        uncertain = sorted((c for c, p in context.items() if 0.0 < p < 1.0 and c != edge), key=canonical_edge_key)
        if len(uncertain) > MAX_JOINT_EDGES:
            raise CapacityError(f"{len(uncertain)} uncertain context edges exceed the guard of {MAX_JOINT_EDGES}")
        total = 0.0
        for states in itertools.product((0, 1), repeat=len(uncertain)):
            prob = 1.0
            ones = set(certain)
            for c, s in zip(uncertain, states):
                prob *= context[c] if s else 1.0 - context[c]
                if s:
                    ones.add(c)
            total += prob * self.gain(edge, frozenset(ones))
        return p_one * total

    def expected_gains(
        self, structure: SequenceStructure, p_one: np.ndarray, context: Mapping[EdgeId, float]
    ) -> np.ndarray:
        """expected_gain for every edge of ``structure``, aligned with structure.edge_ids."""
        return np.array(
            [self.expected_gain(e, float(p), context) for e, p in zip(structure.edge_ids, p_one)],
            dtype=float,
        )

    def aligned(self, structure: SequenceStructure) -> Tuple[np.ndarray, np.ndarray]:
        """(weights, destination ids) as arrays aligned with structure.edge_ids."""
        if self._aligned_structure is not structure:
            edges = structure.edge_ids
            weights = np.array([self.weights.get(e, 0.0) for e in edges], dtype=float)
            destinations = structure.destination_array
            self._aligned_structure = structure
            self._aligned_arrays = (weights, destinations)
        return self._aligned_arrays
