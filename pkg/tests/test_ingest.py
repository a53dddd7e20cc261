import pytest

from ingest.graph_io import (
    format_graph,
    format_hypergraph,
    parse_graph,
    parse_hypergraph,
    parse_undirected_edges,
    read_graph,
    write_graph,
)
from ingest.log_reader import parse_csv_log, parse_link_table, parse_sequence_log, parse_tsv_log, read_sequence_log
from ingest.navigation_graph import (
    build_navigation_graph,
    build_navigation_graph_with_counts,
    count_navigation_transitions,
)
from ingest.purchase_graph import build_purchase_graph, popular_items
from models.experiment import LinkTable, SequenceLog
from models.graph import OrderedHypergraph
from utils.errors import InputError

FIVE_USERS = SequenceLog(
    entries=[
        ("u1", ("a", "b", "c")),
        ("u2", ("b", "a")),
        ("u3", ("a", "c")),
        ("u4", ("c",)),
        ("u5", ("d",)),
    ]
)


def arcs_by_label(g):
    return {(g.label(i), g.label(j)): w for (i, j), w in g.arcs.items()}


def test_purchase_graph_two_users(two_user_log):
    g = build_purchase_graph(two_user_log, min_count=1)
    assert arcs_by_label(g) == {("a", "a"): 1.0, ("b", "b"): 0.5, ("a", "b"): 0.5}


def test_purchase_graph_min_count(two_user_log):
    g = build_purchase_graph(two_user_log, min_count=2)
    assert g.labels == ("a",)
    assert arcs_by_label(g) == {("a", "a"): 1.0}


def test_purchase_graph_empty_log():
    g = build_purchase_graph(SequenceLog(), min_count=1)
    assert g.n == 0 and g.arcs == {}


def test_purchase_graph_five_users():
    g = build_purchase_graph(FIVE_USERS, min_count=1)
    assert arcs_by_label(g) == {
        ("a", "a"): 3 / 5,
        ("b", "b"): 2 / 5,
        ("c", "c"): 3 / 5,
        ("d", "d"): 1 / 5,
        ("a", "b"): 1 / 3,
        ("a", "c"): 2 / 3,
        ("b", "c"): 1 / 2,
        ("b", "a"): 1 / 2,
    }


def test_purchase_population_counts_only_users_with_popular_items():
    assert popular_items(FIVE_USERS, 2) == ["a", "b", "c"]
    g = build_purchase_graph(FIVE_USERS, min_count=2)
    assert g.self_loop_weight(g.vertex_index()["a"]) == 3 / 4
    assert g.self_loop_weight(g.vertex_index()["b"]) == 2 / 4


def test_bad_min_count():
    with pytest.raises(InputError):
        build_purchase_graph(FIVE_USERS, min_count=0)


def test_reingestion_is_byte_identical(tmp_path):
    first, second = tmp_path / "a.tsv", tmp_path / "b.tsv"
    write_graph(build_purchase_graph(FIVE_USERS, 1), first)
    write_graph(build_purchase_graph(FIVE_USERS, 1), second)
    assert first.read_bytes() == second.read_bytes()
    assert read_graph(first) == build_purchase_graph(FIVE_USERS, 1)


def test_navigation_graph(nav_paths, nav_links):
    g = build_navigation_graph(nav_paths, nav_links, min_visits=1)
    assert arcs_by_label(g) == {("a", "b"): 1.0, ("b", "c"): 0.5}
    assert all(i != j for i, j in g.arcs)


def test_navigation_graph_empty(nav_links):
    g = build_navigation_graph(SequenceLog(), nav_links, min_visits=1)
    assert g.n == 0


def test_navigation_drops_unlinked_steps(nav_links):
    paths = SequenceLog(entries=[("p1", ("a", "b", "d"))])
    counts = count_navigation_transitions(paths, nav_links)
    assert counts.dropped == 1
    assert counts.transitions == {("a", "b"): 1}
    assert counts.visits == {"a": 1, "b": 1, "d": 1}
    g, counts = build_navigation_graph_with_counts(paths, nav_links, min_visits=1)
    assert counts.dropped == 1
    assert arcs_by_label(g) == {("a", "b"): 1.0}


def test_navigation_out_weights_sum_to_at_most_one(nav_links):
    paths = SequenceLog(entries=[("p1", ("a", "b", "c")), ("p2", ("a", "c")), ("p3", ("b", "c"))])
    g = build_navigation_graph(paths, nav_links, min_visits=1)
    for v in range(g.n):
        assert sum(w for (i, _), w in g.arcs.items() if i == v) <= 1.0 + 1e-9


def test_parse_csv_log():
    log = parse_csv_log("user_id,item,position\nu1,b,2\nu1,a,1\nu2,c,0\n")
    assert log.as_dict() == {"u1": ("a", "b"), "u2": ("c",)}


def test_parse_csv_log_keeps_first_occurrence():
    log = parse_csv_log("u1,a,1\nu1,b,2\nu1,a,3\n")
    assert log.as_dict() == {"u1": ("a", "b")}


def test_parse_csv_log_reports_line():
    with pytest.raises(InputError) as info:
        parse_csv_log("u1,a,1\nu1,b\n")
    assert info.value.line == 2
    with pytest.raises(InputError) as info:
        parse_csv_log("u1,a,first\n")
    assert info.value.line == 1


def test_parse_csv_log_line_numbers_count_blank_lines():
    with pytest.raises(InputError) as info:
        parse_csv_log("\nu1,a,1\n\nu1,b,2,extra\n")
    assert info.value.line == 4
    with pytest.raises(InputError) as info:
        parse_csv_log("user_id,item,position\nu1,,1\n")
    assert info.value.line == 2
    assert parse_csv_log("user_id,item,position\n").entries == []


def test_parse_tsv_log():
    log = parse_tsv_log("u1\ta b c\nu2\tb\n")
    assert log.as_dict() == {"u1": ("a", "b", "c"), "u2": ("b",)}
    with pytest.raises(InputError):
        parse_tsv_log("u1\ta\nu1\tb\n")
    with pytest.raises(InputError) as info:
        parse_tsv_log("u1\ta b\nu2\tb\tc\n")
    assert info.value.line == 2


def test_parse_sequence_log_detects_shape():
    assert parse_sequence_log("").entries == []
    assert parse_sequence_log("u1\ta b\n").as_dict() == {"u1": ("a", "b")}
    assert parse_sequence_log("u1,a,0\n").as_dict() == {"u1": ("a",)}


def test_read_missing_log(tmp_path):
    with pytest.raises(InputError):
        read_sequence_log(tmp_path / "missing.csv")


def test_parse_link_table():
    table = parse_link_table("src,dst\nb,c\na,b\na,b\n")
    assert table.links == [("a", "b"), ("b", "c")]
    assert ("a", "b") in table
    assert table.pages() == ["a", "b", "c"]
    with pytest.raises(InputError):
        parse_link_table("a,b,c\n")


def test_graph_text_format(line_graph):
    text = format_graph(line_graph)
    assert text == "#vertices 3\n#label 0 a\n#label 1 b\n#label 2 c\n0\t1\t1.0\n1\t2\t1.0\n"
    assert parse_graph(text) == line_graph


def test_parse_graph_errors():
    with pytest.raises(InputError):
        parse_graph("0\t1\t0.5\n")
    with pytest.raises(InputError) as info:
        parse_graph("#vertices 2\n0\t1\n")
    assert info.value.line == 2
    with pytest.raises(InputError):
        parse_graph("#vertices 2\n0\t1\t0.5\n0\t1\t0.5\n")


def test_hypergraph_text_format():
    hg = OrderedHypergraph.from_hyperedges(4, [(0, 2, 3), (1,)], weights=[0.5, 1.0])
    parsed = parse_hypergraph(format_hypergraph(hg))
    assert parsed.hyperedges == hg.hyperedges
    assert parse_hypergraph("#vertices 3\n0 1 2\n").hyperedges == {(0, 1, 2): 1.0}


def test_parse_undirected_edges():
    assert parse_undirected_edges("#vertices 4\n0 1\n1,2\n\n") == (4, [(0, 1), (1, 2)])
    assert parse_undirected_edges("0 1\n") == (None, [(0, 1)])
    with pytest.raises(InputError):
        parse_undirected_edges("0 1 2\n")


def test_link_table_dedupes():
    assert LinkTable(links=[("b", "a"), ("b", "a")]).links == [("b", "a")]
