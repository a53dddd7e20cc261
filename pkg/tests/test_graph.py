import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from models.graph import (
    OrderedHypergraph,
    WeightedDigraph,
    canonical_edge_key,
    encoded_edge,
    fully_induced_hyperedges,
    hyper_valid_edges,
    hypergraph_from_digraph,
    induced_edges,
    max_in_degree,
    valid_edges,
)
from oracle.fixtures import F, R, T
from utils.errors import InputError


def test_induced_edges_follow_order(movies):
    assert induced_edges([F, T], movies) == {(F, F), (T, T), (F, T)}
    assert induced_edges([T, F], movies) == {(T, T), (F, F)}
    assert induced_edges([], movies) == frozenset()


def test_max_in_degree():
    assert max_in_degree(WeightedDigraph.from_edges(4, [(1, 2, 1.0), (3, 2, 1.0)])) == 2
    assert max_in_degree(WeightedDigraph(n=3)) == 0


def test_movie_graph_in_degree(movies):
    assert max_in_degree(movies) == 3
    assert set(movies.in_edges[R]) == {(F, R), (T, R), (R, R)}


def test_valid_edges(movies):
    assert valid_edges([], movies) == set(movies.edge_ids)
    assert valid_edges([F], movies) == {(T, T), (R, R), (F, T), (F, R), (T, R)}
    assert valid_edges([F, T, R], movies) == frozenset()


def test_valid_mask_matches_valid_edges(movies):
    mask = movies.valid_mask([T])
    assert {e for e, keep in zip(movies.edge_ids, mask) if keep} == valid_edges([T], movies)


def test_hyper_valid_edges(fth_hypergraph):
    edge = (0, 2, 3)
    assert hyper_valid_edges([], fth_hypergraph) == {edge}
    assert edge in hyper_valid_edges([0], fth_hypergraph)
    assert edge not in hyper_valid_edges([2], fth_hypergraph)
    # fully present edges are no longer valid
    assert hyper_valid_edges([0, 2, 3], fth_hypergraph) == frozenset()


def test_fully_induced_hyperedges(fth_hypergraph):
    assert fully_induced_hyperedges([0, 1, 2, 3], fth_hypergraph) == {(0, 2, 3)}
    assert fully_induced_hyperedges([2, 0, 3], fth_hypergraph) == frozenset()
    assert fully_induced_hyperedges([], fth_hypergraph) == frozenset()


def test_sequence_checks(movies):
    with pytest.raises(InputError):
        induced_edges([F, F], movies)
    with pytest.raises(InputError):
        induced_edges([7], movies)


def test_duplicate_and_bad_edges_rejected():
    with pytest.raises(InputError):
        WeightedDigraph.from_edges(2, [(0, 1, 0.5), (0, 1, 0.3)])
    with pytest.raises(InputError):
        WeightedDigraph.from_edges(2, [(0, 1, 1.5)])
    with pytest.raises(InputError):
        WeightedDigraph.from_edges(2, [(0, 2, 0.5)])
    with pytest.raises(InputError):
        OrderedHypergraph.from_hyperedges(3, [(0, 1), (0, 1)])
    with pytest.raises(InputError):
        OrderedHypergraph.from_hyperedges(3, [(0, 0)])


def test_edge_ids_sorted_canonically(movies):
    assert list(movies.edge_ids) == sorted(movies.edge_ids, key=canonical_edge_key)
    assert movies.edge_ids[0] == (F, F)


def test_hypergraph_encoding_keeps_induced_sets(movies):
    encoded = hypergraph_from_digraph(movies)
    for sigma in itertools.permutations([F, T, R], 2):
        assert {encoded_edge(e) for e in movies.induced(sigma)} == encoded.induced(sigma)
    assert encoded.r == 2


@st.composite
def digraphs(draw):
    n = draw(st.integers(1, 8))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20))
    g = WeightedDigraph.from_edges(n, [(u, v, 0.5) for u, v in sorted(pairs)])
    sigma = draw(st.permutations(list(range(n))))
    return g, sigma


@given(digraphs())
@settings(max_examples=200, deadline=None)
def test_prefix_monotonicity(case):
    g, sigma = case
    previous = frozenset()
    for i in range(len(sigma) + 1):
        current = induced_edges(sigma[:i], g)
        assert previous <= current
        previous = current


@given(digraphs())
@settings(max_examples=200, deadline=None)
def test_induced_and_valid_are_disjoint(case):
    g, sigma = case
    for i in range(len(sigma) + 1):
        prefix = sigma[:i]
        # an induced edge ends inside sigma, a valid edge never does
        assert not (induced_edges(prefix, g) & valid_edges(prefix, g))


@given(digraphs())
@settings(max_examples=200, deadline=None)
def test_length_two_hypergraph_agrees_with_its_digraph(case):
    g, sigma = case
    encoded = hypergraph_from_digraph(g)
    for i in range(len(sigma) + 1):
        prefix = sigma[:i]
        assert {encoded_edge(e) for e in induced_edges(prefix, g)} == fully_induced_hyperedges(prefix, encoded)
        assert {encoded_edge(e) for e in valid_edges(prefix, g)} == hyper_valid_edges(prefix, encoded)


@given(digraphs(), st.data())
@settings(max_examples=200, deadline=None)
def test_max_in_degree_ignores_weights(case, data):
    g, _ = case
    reweighted = WeightedDigraph.from_edges(
        g.n, [(u, v, data.draw(st.floats(0.01, 1.0))) for u, v in sorted(g.arcs)]
    )
    assert max_in_degree(reweighted) == max_in_degree(g)
