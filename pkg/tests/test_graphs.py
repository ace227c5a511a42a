import json

import pytest

from pathkoszul import (
    EdgeAbsent,
    HypothesisViolation,
    ParseError,
    ValidationError,
    bridges,
    cycle_vertices,
    extendable,
    has_infinite_walk,
    load_graph,
    load_graph_file,
    pick_extension,
)

from oracles import all_connected_graphs_up_to, oracle_extendable_table


def test_load_edge_list():
    g = load_graph("1 2\n2 3\n# comment\n\n1 3")
    assert g.vertices == (1, 2, 3)
    assert g.edges == ((1, 2), (1, 3), (2, 3))
    assert g.neighbors(3) == (1, 2)
    assert g.has_edge(2, 1) and not g.has_edge(1, 1)


def test_load_json():
    text = json.dumps({"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3], [3, 1]]})
    g = load_graph(text)
    assert g.vertices == (1, 2, 3)
    assert len(g.edges) == 3


def test_load_json_isolated_vertex_disconnected():
    text = json.dumps({"vertices": [1, 2, 3], "edges": [[1, 2]]})
    with pytest.raises(ValidationError):
        load_graph(text)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "1",
        "1 2 3",
        "1 a",
        "1 1",
        "1 2\n1 2",
        "1 2\n3 4",
    ],
)
def test_load_rejects_bad_input(text):
    with pytest.raises((ParseError, ValidationError)):
        load_graph(text)


def test_load_graph_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n2 3\n")
    g = load_graph_file(str(p))
    assert g.vertices == (1, 2, 3)
    with pytest.raises(ParseError):
        load_graph_file(str(tmp_path / "missing.txt"))


def test_bridges_and_cycle_vertices(graphs):
    assert bridges(graphs["a2"]) == {(1, 2)}
    assert bridges(graphs["p3"]) == {(1, 2), (2, 3)}
    assert bridges(graphs["c4"]) == frozenset()
    assert bridges(graphs["tri_pendant"]) == {(3, 4)}
    assert cycle_vertices(graphs["c3"]) == {1, 2, 3}
    assert cycle_vertices(graphs["tri_pendant"]) == {1, 2, 3}
    assert cycle_vertices(graphs["p3"]) == frozenset()


def test_has_infinite_walk(graphs):
    for name in ("a2", "p3"):
        assert not has_infinite_walk(graphs[name])
    for name in ("c3", "c4", "k4", "tri_pendant", "c5", "c6"):
        assert has_infinite_walk(graphs[name])


def test_extendable_tri_pendant(graphs):
    g = graphs["tri_pendant"]
    table = {
        (u, v): extendable(g, u, v)
        for u, v in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (3, 4), (4, 3)]
    }
    assert table == {
        (1, 2): True,
        (2, 1): True,
        (1, 3): True,
        (3, 1): True,
        (2, 3): True,
        (3, 2): True,
        (3, 4): False,
        (4, 3): True,
    }


def test_extendable_requires_edge(graphs):
    with pytest.raises(EdgeAbsent):
        extendable(graphs["c4"], 1, 3)


def test_extendable_vs_orientation_oracle_small():
    """Spot check on every connected graph with at most 4 vertices."""
    for vertices, edges in all_connected_graphs_up_to(4):
        g = load_graph("\n".join(f"{u} {v}" for u, v in edges))
        want = oracle_extendable_table(vertices, edges)
        for (u, v), flag in want.items():
            assert extendable(g, u, v) == flag, (edges, u, v)


def test_hypothesis_gives_every_vertex_an_extension(graphs):
    """On a graph with a cycle, each vertex has some extendable arc out."""
    for name in ("c3", "c4", "k4", "tri_pendant", "c5", "c6"):
        g = graphs[name]
        for i in g.vertices:
            assert any(extendable(g, i, j) for j in g.neighbors(i)), (name, i)


def test_pick_extension(graphs):
    g = graphs["tri_pendant"]
    # smallest neighbor of 3 keeping the walk extendable, excluding 4
    assert pick_extension(g, 4, 3) == 1
    assert pick_extension(g, 1, 2) == 3
    g2 = load_graph("1 2")
    with pytest.raises(HypothesisViolation):
        pick_extension(g2, 1, 2)
