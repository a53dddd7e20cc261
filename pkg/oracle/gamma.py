"""
Weak adaptive submodularity ratio by enumeration.

gamma_hat is the smallest  sum_{e in A} Delta(e | psi) / Delta(A | psi')  over
edge subrealizations psi <= psi' that some positive-probability vertex
realization produces, and sets A outside dom(psi') with |A| <= max_set.

Bundled utilities only read state-1 edges, so a subrealization is a pair of
bitmasks (domain D, state-1 edges O within D), and every h value needed is a
lookup into a table of h over all 2^m edge subsets.
"""
import itertools
import logging
from typing import Dict, List, Tuple

import numpy as np

from models.reports import GammaEstimate
from oracle.instances import Instance
from oracle.optimal import edge_state_table
from utils.constants import ADASEQ_MAX_SET, LOG_LEVEL_VALUE, LOG_FORMAT, MAX_GAMMA_EDGES, TIE_TOLERANCE
from utils.errors import CapacityError, InputError

logging.basicConfig(level=LOG_LEVEL_VALUE, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

POSITIVE_GAIN = 1e-12


def submasks(mask: int) -> List[int]:
    """All submasks of ``mask``, ascending."""
    result = []
    sub = mask
    while True:
        result.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return result[::-1]


def _set_masks(free: int, m: int, max_set: int) -> List[int]:
    members = [i for i in range(m) if free >> i & 1]
    masks = []
    for size in range(1, min(max_set, len(members)) + 1):
        for combo in itertools.combinations(members, size):
            masks.append(sum(1 << i for i in combo))
    return masks


def estimate_gamma(inst: Instance, max_set: int = ADASEQ_MAX_SET) -> GammaEstimate:
    s, h = inst.structure, inst.utility
    edges = s.edge_ids
    m = len(edges)
    if m > MAX_GAMMA_EDGES:
        raise CapacityError(f"gamma enumeration over {m} edges exceeds the guard of {MAX_GAMMA_EDGES}")
    if max_set < 1:
        raise InputError(f"max_set must be at least 1, got {max_set}")

    table = edge_state_table(s, inst.dist, inst.rule)
    rows = np.array(sorted(table), dtype=np.int64)
    probs = np.array([table[r] for r in sorted(table)], dtype=float)
    bit = np.left_shift(1, np.arange(m, dtype=np.int64))
    row_ones = ((rows[:, None] & bit[None, :]) != 0).astype(float)
    values = np.array(
        [h.value(e for i, e in enumerate(edges) if b >> i & 1) for b in range(1 << m)],
        dtype=float,
    )

    # every realizable subrealization, with Delta(e | psi) for all e
    keys: List[Tuple[int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    deltas = []
    for domain in range(1 << m):
        for ones in np.unique(rows & domain):
            ones = int(ones)
            weights = probs * ((rows & domain) == ones)
            p_one = weights @ row_ones / weights.sum()
            index[(domain, ones)] = len(keys)
            keys.append((domain, ones))
            deltas.append(p_one * (values[ones | bit] - values[ones]))
    deltas = np.array(deltas) if deltas else np.zeros((0, m))

    full = (1 << m) - 1
    best_ratio = np.inf
    witness = None
    pairs = 0
    for domain_p, ones_p in keys:
        masks = _set_masks(full & ~domain_p, m, max_set)
        if not masks:
            continue
        set_masks = np.array(masks, dtype=np.int64)
        consistent = (rows & domain_p) == ones_p
        weights = probs[consistent] / probs[consistent].sum()
        outcomes = ones_p | (rows[consistent][:, None] & set_masks[None, :])
        denominators = weights @ values[outcomes] - values[ones_p]
        positive = np.flatnonzero(denominators > POSITIVE_GAIN)
        if positive.size == 0:
            continue

        subs = [index[(d, ones_p & d)] for d in submasks(domain_p)]
        members = ((set_masks[positive][:, None] & bit[None, :]) != 0).astype(float)
        numerators = deltas[subs] @ members.T
        pairs += numerators.size
        lowest = numerators.argmin(axis=0)
        ratios = numerators[lowest, np.arange(positive.size)] / denominators[positive]
        j = int(np.argmin(ratios))
        if ratios[j] < best_ratio - TIE_TOLERANCE:
            best_ratio = float(ratios[j])
            witness = (keys[subs[lowest[j]]], (domain_p, ones_p), int(set_masks[positive[j]]))

    if witness is None:
        return GammaEstimate(gamma_hat=1.0, max_set=max_set, edge_count=m, pairs_checked=pairs)

    gamma_hat = min(best_ratio, 1.0)
    if abs(gamma_hat - 1.0) <= TIE_TOLERANCE:
        gamma_hat = 1.0

    def states(key: Tuple[int, int]):
        domain, ones = key
        return [(edges[i], int(ones >> i & 1)) for i in range(m) if domain >> i & 1]

    psi, psi_prime, set_mask = witness
    estimate = GammaEstimate(
        gamma_hat=gamma_hat,
        max_set=max_set,
        edge_count=m,
        pairs_checked=pairs,
        witness_psi=states(psi),
        witness_psi_prime=states(psi_prime),
        witness_A=[edges[i] for i in range(m) if set_mask >> i & 1],
    )
    logger.debug(f"gamma_hat={gamma_hat:.6f} over {pairs} (psi, A) pairs; witness {estimate.witness_text()}")
    return estimate
