"""
Vertex-state realizations, partial realizations, edge-state rules and the
per-vertex state distributions policies and oracles draw from.

Unknown states are absence from a partial map, never a sentinel value.
"""
import itertools
from typing import Dict, Iterable, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from models.graph import EdgeId, VertexId
from utils.constants import MAX_ENUMERATION_VERTICES
from utils.errors import CapacityError, ConsistencyError, InputError

State = int
BINARY_ALPHABET: Tuple[State, ...] = (0, 1)


class Realization(BaseModel):
    """Total map vertex -> state, stored densely by vertex id."""

    model_config = ConfigDict(frozen=True)

    states: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.states)

    def __getitem__(self, v: VertexId) -> State:
        return self.states[v]

    def as_mapping(self) -> Dict[VertexId, State]:
        return dict(enumerate(self.states))

    def to_partial(self) -> "PartialRealization":
        return PartialRealization(observed=self.as_mapping())


class PartialRealization(BaseModel):
    """psi: states observed so far; dom(psi) is the set of keys."""

    model_config = ConfigDict(frozen=True)

    observed: Dict[int, int] = Field(default_factory=dict)

    def get(self, v: VertexId) -> Optional[State]:
        return self.observed.get(v)

    def __contains__(self, v: VertexId) -> bool:
        return v in self.observed

    def __len__(self) -> int:
        return len(self.observed)

    def observe(self, v: VertexId, s: State) -> "PartialRealization":
        return observe(self, v, s)


class EdgeStateRule(BaseModel):
    """Deterministic map (source state, destination state) -> edge state.

    ``table=None`` is the start-vertex rule: an edge copies its source's state
    and never needs the destination observed.
    """

    model_config = ConfigDict(frozen=True)

    name: str = "start"
    table: Optional[Dict[Tuple[int, int], int]] = None
    alphabet: Tuple[int, ...] = BINARY_ALPHABET

    @model_validator(mode="after")
    def _total(self):
        if self.table is not None:
            missing = [pair for pair in itertools.product(self.alphabet, repeat=2) if pair not in self.table]
            if missing:
                raise ValueError(f"edge-state rule '{self.name}' undefined on {missing}")
        return self

    @property
    def reads_destination(self) -> bool:
        return self.table is not None

    def apply(self, src_state: State, dst_state: Optional[State]) -> State:
        if self.table is None:
            return src_state
        return self.table[(src_state, dst_state)]


def _table(fn) -> Dict[Tuple[int, int], int]:
    return {(a, b): fn(a, b) for a, b in itertools.product(BINARY_ALPHABET, repeat=2)}


EDGE_STATE_RULES: Dict[str, EdgeStateRule] = {
    "start": EdgeStateRule(name="start"),
    "end": EdgeStateRule(name="end", table=_table(lambda a, b: b)),
    "and": EdgeStateRule(name="and", table=_table(lambda a, b: a & b)),
    "or": EdgeStateRule(name="or", table=_table(lambda a, b: a | b)),
}


def start_vertex_rule() -> EdgeStateRule:
    return EDGE_STATE_RULES["start"]


class StateDistribution(BaseModel):
    """p(phi) restricted to independent per-vertex states.

    kind:
      - ``bernoulli``: vertex v is in state 1 with probability q[v]
      - ``point``: a single realization
      - ``replay``: a ground-truth map built from held-out data
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["bernoulli", "point", "replay"]
    n: int = Field(ge=0)
    q: Optional[Tuple[float, ...]] = None
    point: Optional[Tuple[int, ...]] = None
    replay: Optional[Dict[int, int]] = None

    @model_validator(mode="after")
    def _check(self):
        if self.kind == "bernoulli":
            if self.q is None or len(self.q) != self.n:
                raise ValueError(f"bernoulli distribution needs {self.n} parameters")
            if any(not 0.0 <= p <= 1.0 for p in self.q):
                raise ValueError("bernoulli parameters must lie in [0, 1]")
        elif self.kind == "point":
            if self.point is None or len(self.point) != self.n:
                raise ValueError(f"point-mass distribution needs {self.n} states")
        elif self.replay is None:
            raise ValueError("replay distribution needs a ground-truth map")
        return self

    @classmethod
    def bernoulli(cls, q: Sequence[float]) -> "StateDistribution":
        try:
            return cls(kind="bernoulli", n=len(q), q=tuple(float(p) for p in q))
        except ValidationError as e:
            raise InputError(str(e)) from e

    @classmethod
    def uniform(cls, n: int, q: float) -> "StateDistribution":
        return cls.bernoulli([q] * n)

    @classmethod
    def point_mass(cls, states: Sequence[int]) -> "StateDistribution":
        return cls(kind="point", n=len(states), point=tuple(int(s) for s in states))

    @classmethod
    def from_replay(cls, truth: Mapping[VertexId, State], n: int) -> "StateDistribution":
        return cls(kind="replay", n=n, replay=dict(truth))

    def state_probabilities(self, v: VertexId) -> Dict[State, float]:
        if self.kind == "bernoulli":
            p = self.q[v]
            return {s: prob for s, prob in ((0, 1.0 - p), (1, p)) if prob > 0.0}
        if self.kind == "point":
            return {self.point[v]: 1.0}
        if v not in self.replay:
            raise InputError(f"replay map has no state for vertex {v}")
        return {self.replay[v]: 1.0}

    def marginal(self, v: VertexId) -> float:
        """P(vertex v is in state 1)."""
        return self.state_probabilities(v).get(1, 0.0)

    def conditional(self, v: VertexId, psi: PartialRealization) -> Dict[State, float]:
        # independent vertices: conditioning only matters for v itself
        if v in psi:
            return {psi.get(v): 1.0}
        return self.state_probabilities(v)


def observe(psi: PartialRealization, v: VertexId, s: State) -> PartialRealization:
    current = psi.get(v)
    if current is not None:
        if current != s:
            raise ConsistencyError(f"vertex {v} already observed in state {current}, cannot observe {s}")
        return psi
    observed = dict(psi.observed)
    observed[v] = s
    return PartialRealization.model_construct(observed=observed)


def is_subrealization(psi: PartialRealization, psi2: PartialRealization) -> bool:
    return all(v in psi2.observed and psi2.observed[v] == s for v, s in psi.observed.items())


def edge_state(edge: EdgeId, vertex_states: Mapping[VertexId, State], rule: EdgeStateRule) -> Optional[State]:
    """State of ``edge`` under ``rule``, or None when an endpoint the rule reads is unknown."""
    src = vertex_states.get(edge[0])
    if src is None:
        return None
    if not rule.reads_destination:
        return rule.apply(src, None)
    dst = vertex_states.get(edge[-1])
    if dst is None:
        return None
    return rule.apply(src, dst)


def induce_edge_partial(
    psi: PartialRealization, edges: Iterable[EdgeId], rule: EdgeStateRule
) -> Dict[EdgeId, State]:
    induced = {}
    for edge in edges:
        s = edge_state(edge, psi.observed, rule)
        if s is not None:
            induced[edge] = s
    return induced


def edge_state_distribution(
    edge: EdgeId, psi: PartialRealization, rule: EdgeStateRule, dist: StateDistribution
) -> Dict[State, float]:
    """Distribution of ``edge``'s state given psi, from independent vertex marginals."""
    needed = [edge[0]]
    if rule.reads_destination and edge[-1] != edge[0]:
        needed.append(edge[-1])
    options = [list(dist.conditional(v, psi).items()) for v in needed]
    result: Dict[State, float] = {}
    for combo in itertools.product(*options):
        states = {v: s for v, (s, _) in zip(needed, combo)}
        prob = float(np.prod([p for _, p in combo]))
        s = edge_state(edge, states, rule)
        result[s] = result.get(s, 0.0) + prob
    return result


def sample_realization(dist: StateDistribution, seed: int) -> Realization:
    if dist.kind == "point":
        return Realization(states=dist.point)
    if dist.kind == "replay":
        missing = [v for v in range(dist.n) if v not in dist.replay]
        if missing:
            raise InputError(f"replay map is missing vertices {missing[:10]}")
        return Realization(states=tuple(dist.replay[v] for v in range(dist.n)))
    rng = np.random.default_rng(seed)
    draws = rng.random(dist.n) < np.asarray(dist.q)
    return Realization.model_construct(states=tuple(int(x) for x in draws))


def iter_realizations(dist: StateDistribution, n: Optional[int] = None) -> Iterator[Tuple[Realization, float]]:
    n = dist.n if n is None else n
    if n != dist.n:
        raise InputError(f"distribution covers {dist.n} vertices, asked for {n}")
    if n > MAX_ENUMERATION_VERTICES:
        raise CapacityError(f"exact enumeration over {n} vertices exceeds the guard of {MAX_ENUMERATION_VERTICES}")
    if dist.kind != "bernoulli":
        yield sample_realization(dist, seed=0), 1.0
        return
    options = [list(dist.state_probabilities(v).items()) for v in range(n)]
    for combo in itertools.product(*options):
        states = tuple(s for s, _ in combo)
        yield Realization.model_construct(states=states), float(np.prod([p for _, p in combo]))


def enumerate_realizations(dist: StateDistribution, n: Optional[int] = None) -> List[Tuple[Realization, float]]:
    """Every realization with positive probability, exact for n up to the enumeration guard."""
    return list(iter_realizations(dist, n))
