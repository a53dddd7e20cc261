import pytest

from models.experiment import LinkTable, SequenceLog
from models.graph import OrderedHypergraph, WeightedDigraph
from oracle.fixtures import movie_graph, movie_instance


@pytest.fixture
def movies() -> WeightedDigraph:
    return movie_graph()


@pytest.fixture
def movie_inst():
    return movie_instance()


@pytest.fixture
def line_graph() -> WeightedDigraph:
    """a -> b -> c with unit weights."""
    return WeightedDigraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)], labels=("a", "b", "c"))


@pytest.fixture
def fth_hypergraph() -> OrderedHypergraph:
    """Vertices F, X, T, R and the single hyperedge (F, T, R)."""
    return OrderedHypergraph.from_hyperedges(4, [(0, 2, 3)], labels=("F", "X", "T", "R"))


@pytest.fixture
def two_user_log() -> SequenceLog:
    return SequenceLog(entries=[("u1", ("a", "b")), ("u2", ("a",))])


@pytest.fixture
def five_user_log() -> SequenceLog:
    """Everyone starts with a; b buyers mostly go on to d, c is mostly bought alone."""
    return SequenceLog(
        entries=[
            ("u1", ("a", "b", "d")),
            ("u2", ("a", "b", "d")),
            ("u3", ("a", "b", "c")),
            ("u4", ("a", "c")),
            ("u5", ("a", "c")),
        ]
    )


@pytest.fixture
def nav_paths() -> SequenceLog:
    return SequenceLog(entries=[("p1", ("a", "b", "c")), ("p2", ("a", "b"))])


@pytest.fixture
def nav_links() -> LinkTable:
    return LinkTable(links=[("a", "b"), ("b", "c"), ("a", "c"), ("c", "a")])


@pytest.fixture
def three_paths() -> SequenceLog:
    """Three walks from a to d."""
    return SequenceLog(entries=[("p1", ("a", "b", "d")), ("p2", ("a", "c", "d")), ("p3", ("a", "b", "c", "d"))])


@pytest.fixture
def trail_links() -> LinkTable:
    return LinkTable(links=[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])
