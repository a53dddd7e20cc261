"""
Exhaustive optimum oracles: the best fixed sequence and the best adaptive
vertex-appending policy, both exact for small instances.

Edge sets are handled as integer bitmasks over structure.edge_ids.
"""
import logging
from typing import Callable, Dict, Iterable, List, Tuple

from models.graph import EdgeId, SequenceStructure, VertexId
from models.states import EdgeStateRule, StateDistribution, edge_state, iter_realizations
from oracle.instances import Instance
from utility.base_utility import BaseUtility
from utils.constants import (
    LOG_LEVEL_VALUE,
    LOG_FORMAT,
    MAX_ADAPTIVE_SEARCH_VERTICES,
    MAX_SEQUENCE_SEARCH_VERTICES,
    TIE_TOLERANCE,
)
from utils.errors import CapacityError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def edge_bits(structure: SequenceStructure, edges: Iterable[EdgeId]) -> int:
    index = structure.edge_index
    bits = 0
    for e in edges:
        bits |= 1 << index[e]
    return bits


def edge_state_table(structure: SequenceStructure, dist: StateDistribution, rule: EdgeStateRule) -> Dict[int, float]:
    """Distribution of the state-1 edge set: bitmask of edges in state 1 -> probability."""
    table: Dict[int, float] = {}
    for realization, prob in iter_realizations(dist, structure.n):
        states = realization.as_mapping()
        ones = edge_bits(structure, (e for e in structure.edge_ids if edge_state(e, states, rule) == 1))
        table[ones] = table.get(ones, 0.0) + prob
    return table


def bitmask_values(h: BaseUtility, structure: SequenceStructure) -> Callable[[int], float]:
    """h as a function of an edge bitmask, memoized."""
    edges = structure.edge_ids
    cache: Dict[int, float] = {0: 0.0}

    def value(bits: int) -> float:
        if bits not in cache:
            cache[bits] = h.value(e for i, e in enumerate(edges) if bits >> i & 1)
        return cache[bits]

    return value


def incident_vertices(structure: SequenceStructure) -> List[VertexId]:
    """Vertices touching at least one edge; no other vertex can change E(sigma)."""
    return sorted({v for e in structure.edge_ids for v in e})


def optimal_sequence(inst: Instance) -> Tuple[Tuple[VertexId, ...], float]:
    """Best sequence of at most k distinct vertices under f_avg, by exhaustive search."""
    s = inst.structure
    if s.n > MAX_SEQUENCE_SEARCH_VERTICES:
        raise CapacityError(f"sequence search over {s.n} vertices exceeds the guard of {MAX_SEQUENCE_SEARCH_VERTICES}")
    rows = sorted(edge_state_table(s, inst.dist, inst.rule).items())
    value = bitmask_values(inst.utility, s)
    candidates = incident_vertices(s)
    best_sequence: Tuple[VertexId, ...] = ()
    best_value = 0.0

    def search(sequence: Tuple[VertexId, ...]):
        nonlocal best_sequence, best_value
        if len(sequence) >= inst.k:
            return
        for v in candidates:
            if v in sequence:
                continue
            child = sequence + (v,)
            induced = edge_bits(s, s.induced(child))
            expected = sum(p * value(induced & ones) for ones, p in rows)
            if expected > best_value + TIE_TOLERANCE:
                best_sequence, best_value = child, expected
            search(child)

    search(())
    logger.debug(f"optimal sequence {list(best_sequence)} with value {best_value:.6f}")
    return best_sequence, best_value


def optimal_adaptive_value(inst: Instance) -> float:
    """
    Expected value of the best adaptive policy that appends one vertex at a
    time (or stops), observing each vertex's state after selecting it.
    """
    s = inst.structure
    if s.n > MAX_ADAPTIVE_SEARCH_VERTICES:
        raise CapacityError(f"adaptive search over {s.n} vertices exceeds the guard of {MAX_ADAPTIVE_SEARCH_VERTICES}")
    h, rule, dist = inst.utility, inst.rule, inst.dist
    candidates = incident_vertices(s)
    memo: Dict[tuple, float] = {}

    def best(sequence: Tuple[VertexId, ...], states: Dict[VertexId, int]) -> float:
        induced = s.induced(sequence)
        # order matters only through the induced set and what can still be completed
        key = (
            frozenset(sequence),
            induced,
            frozenset(s.valid(sequence)),
            tuple(sorted(states.items())),
        )
        if key in memo:
            return memo[key]
        result = h.value(e for e in induced if edge_state(e, states, rule) == 1)
        if len(sequence) < inst.k:
            for v in candidates:
                if v in states:
                    continue
                expected = 0.0
                for state, p in sorted(dist.state_probabilities(v).items()):
                    child_states = dict(states)
                    child_states[v] = state
                    expected += p * best(sequence + (v,), child_states)
                result = max(result, expected)
        memo[key] = result
        return result

    value = best((), {})
    logger.debug(f"optimal adaptive value {value:.6f} over {len(memo)} search nodes")
    return value

