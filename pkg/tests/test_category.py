import pytest

from pathkoszul import (
    NotComposable,
    Truncated,
    build_category,
    field_from_name,
    op_dual,
    verify_category,
)

from oracles import oracle_dims

FROZEN_TOTALS = {"a2": 6, "p3": 10, "c3": 12, "c4": 16, "k4": 20,
                 "tri_pendant": 16, "c5": 20, "c6": 24}


def test_truncated_dims_match_oracle(graphs, cat):
    for name, g in graphs.items():
        c = cat(name)
        want = oracle_dims(list(g.vertices), list(g.edges), 2)
        assert c.dims_by_degree() == want, name
        assert c.total_dim() == FROZEN_TOTALS[name]
        assert c.total_dim() == 2 * len(g.vertices) + 2 * len(g.edges)


def test_literal_dims_match_oracle(graphs, cat):
    for name in ("p3", "c3", "k4", "tri_pendant"):
        g = graphs[name]
        c = cat(name, mode="literal", cap=3)
        want = oracle_dims(list(g.vertices), list(g.edges), 3)
        got = c.dims_by_degree()
        for d in range(4):
            assert got.get(d, 0) == want[d], (name, d)


def test_a2_literal_never_dies(cat):
    c = cat("a2", mode="literal", cap=5)
    for d in range(6):
        assert sum(c.dim(i, j, d) for i in (1, 2) for j in (1, 2)) == 2
    assert c.dim(1, 2, 3) == 1
    assert c.dim(1, 1, 3) == 0


def test_verify_category_corpus(cat):
    for name in FROZEN_TOTALS:
        rep = verify_category(cat(name))
        assert rep["ok"], (name, rep["failures"])
    rep = verify_category(cat("c3", mode="literal", cap=3))
    assert rep["ok"]


def test_truncation_active_flag(cat):
    assert verify_category(cat("a2"))["truncation_active"] is True
    assert verify_category(cat("c3"))["truncation_active"] is False
    assert verify_category(cat("tri_pendant"))["truncation_active"] is False


def test_identity_arrow_loop(cat):
    c = cat("c3")
    e1 = c.identity(1)
    a12 = c.arrow(1, 2)
    w1 = c.loop(1)
    assert (e1.source, e1.target, e1.degree) == (1, 1, 0)
    assert (a12.source, a12.target, a12.degree) == (1, 2, 1)
    assert (w1.source, w1.target, w1.degree) == (1, 1, 2)
    assert w1.path == (1, 2, 1)  # representative loop through the smallest neighbor


def test_compose_rules(cat):
    c = cat("c3")
    one = c.field.one
    # a 2-step path through three distinct vertices is zero
    assert c.compose(c.arrow(2, 3), c.arrow(1, 2)) == ()
    # going out and back gives the loop class
    assert c.compose(c.arrow(2, 1), c.arrow(1, 2)) == ((one, c.loop(1)),)
    # all out-and-back loops at a vertex agree
    assert c.compose(c.arrow(3, 1), c.arrow(1, 3)) == ((one, c.loop(1)),)
    # identities are units
    w = c.loop(2)
    assert c.compose(w, c.identity(2)) == ((one, w),)
    assert c.compose(c.identity(2), w) == ((one, w),)
    with pytest.raises(NotComposable):
        c.compose(c.arrow(1, 2), c.arrow(1, 2))


def test_compose_beyond_cap(cat):
    c2 = cat("c3")
    assert c2.compose(c2.loop(1), c2.arrow(2, 1)) == ()  # degree 3 truncated
    c3 = cat("c3", mode="literal", cap=2)
    with pytest.raises(Truncated):
        c3.compose(c3.loop(1), c3.arrow(2, 1))
    c4 = cat("a2", mode="literal", cap=3)
    combo = c4.compose(c4.arrow(1, 2), c4.loop(1))
    assert len(combo) == 1 and combo[0][1].path == (1, 2, 1, 2)


def test_dim_beyond_cap(cat):
    assert cat("c3").dim(1, 1, 3) == 0
    with pytest.raises(Truncated):
        cat("c3", mode="literal", cap=2).dim(1, 1, 3)


def test_nf_of_path(cat):
    c = cat("tri_pendant")
    one = c.field.one
    assert c.nf_of_path((1, 2, 3)) == ()
    assert c.nf_of_path((3, 4, 3)) == ((one, c.loop(3)),)
    assert c.nf_of_path((3, 2, 3)) == ((one, c.loop(3)),)
    assert c.loop(3).path == (3, 1, 3)


def test_op_dual(graphs, cat):
    for name in ("c3", "tri_pendant", "a2"):
        c = cat(name)
        d = op_dual(c)
        assert d.total_dim() == c.total_dim()
        for i in graphs[name].vertices:
            for j in graphs[name].vertices:
                for n in range(3):
                    assert d.dim(i, j, n) == c.dim(j, i, n)
        assert verify_category(d)["ok"]


def test_to_dict_shape(cat):
    d = cat("c3").to_dict()
    assert d["total_dim"] == 12
    assert d["field"] == "fp:32003"
    assert d["mode"] == "truncate2"
    assert d["dims"]["1,1,0"] == 1
    assert d["dims"]["1,2,1"] == 1


def test_fields_give_same_dims(graphs):
    g = graphs["k4"]
    dims = []
    for fname in ("fp:2", "fp:3", "fp:32003", "q"):
        c = build_category(g, field_from_name(fname))
        dims.append(c.dims_by_degree())
    assert all(d == dims[0] for d in dims)
