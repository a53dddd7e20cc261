"""
Exact conditional marginal gains Delta(. | psi).

``psi_e`` arguments are partial edge-state maps (edge id -> state); h(psi) is
evaluated on dom(psi) only.
"""
import itertools
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from models.graph import EdgeId, SequenceStructure, canonical_edge_key
from models.states import EdgeStateRule, PartialRealization, StateDistribution, edge_state_distribution
from utils.constants import MAX_JOINT_EDGES, PROBABILITY_TOLERANCE
from utils.errors import CapacityError, InputError
from .base_utility import BaseUtility


def _check_distribution(dist: Mapping, what: str):
    total = sum(dist.values())
    if abs(total - 1.0) > PROBABILITY_TOLERANCE:
        raise InputError(f"{what} sums to {total}, expected 1")
    if any(p < 0.0 for p in dist.values()):
        raise InputError(f"{what} has a negative probability")


def marginal_gain(
    h: BaseUtility, e: EdgeId, psi_e: Mapping[EdgeId, int], edge_state_dist: Mapping[int, float]
) -> float:
    """Delta(e | psi) = sum_s P(s) [h(psi + {e: s}) - h(psi)]."""
    if e in psi_e:
        raise InputError(f"edge {e} is already in dom(psi)")
    _check_distribution(edge_state_dist, f"state distribution of edge {e}")
    base = h.evaluate(psi_e)
    total = 0.0
    for s, p in sorted(edge_state_dist.items()):
        if p == 0.0:
            continue
        extended = dict(psi_e)
        extended[e] = s
        total += p * (h.evaluate(extended) - base)
    return total


def coverage_marginal_closed_form(
    e: EdgeId, psi_e: Mapping[EdgeId, int], weights: Mapping[EdgeId, float], p_one: float
) -> float:
    """p_one * w_ij * prod over state-1 edges (i', j) of psi of (1 - w_i'j)."""
    miss = 1.0
    for c in sorted(psi_e, key=canonical_edge_key):
        if psi_e[c] == 1 and c[-1] == e[-1] and c != e:
            miss *= 1.0 - weights[c]
    return p_one * weights[e] * miss


def independent_joint(dists: Sequence[Mapping[int, float]]) -> Dict[Tuple[int, ...], float]:
    """Joint distribution of independent per-edge state distributions."""
    joint = {}
    for combo in itertools.product(*(sorted(d.items()) for d in dists)):
        states = tuple(s for s, _ in combo)
        joint[states] = joint.get(states, 0.0) + float(np.prod([p for _, p in combo]))
    return joint


def set_marginal_gain(
    h: BaseUtility,
    A: Iterable[EdgeId],
    psi_e: Mapping[EdgeId, int],
    joint_dist: Mapping[Tuple[int, ...], float],
) -> float:
    """
    Delta(A | psi) by enumeration. ``joint_dist`` maps a state tuple, aligned
    with A sorted by canonical edge key, to its probability given psi.
    """
    A = sorted(set(A), key=canonical_edge_key)
    if len(A) > MAX_JOINT_EDGES:
        raise CapacityError(f"|A| = {len(A)} exceeds the joint enumeration guard of {MAX_JOINT_EDGES}")
    overlap = [e for e in A if e in psi_e]
    if overlap:
        raise InputError(f"edges {overlap} are already in dom(psi)")
    if not A:
        return 0.0
    _check_distribution(joint_dist, "joint state distribution")
    base = h.evaluate(psi_e)
    total = 0.0
    for states, p in sorted(joint_dist.items()):
        if len(states) != len(A):
            raise InputError(f"joint state {states} does not match |A| = {len(A)}")
        if p == 0.0:
            continue
        extended = dict(psi_e)
        extended.update(zip(A, states))
        total += p * (h.evaluate(extended) - base)
    return total


def edge_one_probabilities(
    structure: SequenceStructure, psi: PartialRealization, rule: EdgeStateRule, dist: StateDistribution
) -> np.ndarray:
    """P(edge in state 1 | psi) for every edge, aligned with structure.edge_ids."""
    if not rule.reads_destination:
        vertex_p = np.array(
            [float(psi.get(v) == 1) if v in psi else dist.marginal(v) for v in range(structure.n)],
            dtype=float,
        )
        return vertex_p[structure.source_array] if structure.n else np.zeros(0)
    return np.array(
        [edge_state_distribution(e, psi, rule, dist).get(1, 0.0) for e in structure.edge_ids],
        dtype=float,
    )
