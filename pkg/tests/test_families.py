"""Gadget family constructors: counts, labels, spec syntax, hom images."""

import math

import pytest

from turanlab import families as fam
from turanlab.families import (
    SpecParseError,
    add_kpartite_on,
    base_construction,
    base_edge_count,
    build_graph,
    build_labeled,
    hom_image_family,
    pairs_of,
    parse_family_spec,
)
from turanlab.hypercore import (
    complete_kgraph,
    is_isomorphic,
    near_balanced_sizes,
    new_hypergraph,
)


def test_ladder_shape():
    l1 = fam.ladder(3, 1)
    assert l1.graph.n == 3 and l1.graph.m == 1
    l2 = fam.ladder(3, 2)
    assert l2.graph.n == 5 and l2.graph.m == 3
    # each non-terminal row feeds k-1 edges, the last row one
    l53 = fam.ladder(5, 3)
    assert l53.graph.n == 3 * 4 + 1 and l53.graph.m == 4 * 2 + 1
    with pytest.raises(ValueError):
        fam.ladder(3, 0)


def test_zycle_shape():
    z = fam.zycle(3, 3)
    assert z.graph.n == 6 and z.graph.m == 6
    assert is_isomorphic(fam.zycle(3, 2).graph, complete_kgraph(3, 4))
    # k=2 zycles are cycles; length 2 collapses the doubled edge
    assert fam.zycle(2, 5).graph.m == 5
    assert fam.zycle(2, 2).graph.m == 1
    with pytest.raises(ValueError):
        fam.zycle(3, 1)


def test_ladder_zycle_shape():
    lz = fam.ladder_zycle(3, 2, 2)
    # rows: v1, v2=w1, w2; ladder edges 2, cyclic edges 4
    assert lz.graph.n == 6 and lz.graph.m == 6
    assert fam.ladder_zycle(2, 3, 2).graph.m == 2 + 1
    with pytest.raises(ValueError):
        fam.ladder_zycle(3, 0, 2)
    with pytest.raises(ValueError):
        fam.ladder_zycle(3, 2, 1)


def test_expansion_shape():
    e = fam.expansion_complete(3, 4)
    assert e.graph.n == 10 and e.graph.m == 6
    assert is_isomorphic(fam.expansion_complete(2, 5).graph, complete_kgraph(2, 5))
    with pytest.raises(ValueError):
        fam.expansion_complete(3, 3)


def test_glued_ladders_shape():
    g = fam.glued_ladders(3, 4, [2] * 6)
    assert g.graph.n == 22 and g.graph.m == 18
    # row 1 of each gadget ends with x_i, x_j
    for (i, j), row in g.starting_sets.items():
        assert row[-2:] == (i - 1, j - 1)
    # k=2, all lengths 1: each pair contributes the edge {x_i, x_j}
    assert is_isomorphic(fam.glued_ladders(2, 4, [1] * 6).graph, complete_kgraph(2, 4))
    with pytest.raises(ValueError):
        fam.glued_ladders(3, 4, [1, 2, 1, 1, 1, 1])  # increasing lengths
    with pytest.raises(ValueError):
        fam.glued_ladders(3, 4, [2] * 5)  # wrong count


def test_glued_ladder_zycles_shape():
    g = fam.glued_ladder_zycles(3, 4, 1, 2)
    assert g.graph.n == 4 + 6 * 2 and g.graph.m == 6 * 4
    # no terminals anywhere
    assert not any(name.startswith("t[") for name in g.labels)
    with pytest.raises(ValueError):
        fam.glued_ladder_zycles(3, 4, 1, 1)


def test_labels_are_bijective():
    for lg in (
        fam.ladder(3, 2),
        fam.zycle(4, 3),
        fam.ladder_zycle(3, 2, 3),
        fam.expansion_complete(3, 5),
        fam.glued_ladders(3, 4, [2, 2, 1, 1, 1, 1]),
        fam.glued_ladder_zycles(2, 3, 2, 3),
    ):
        assert sorted(lg.labels.values()) == list(range(lg.graph.n))


def test_base_construction():
    b = base_construction(3, 4, 12)
    assert b.n == 12 and b.m == base_edge_count(3, 4, 12)
    # classes of size 4 with inner 3-partite [2,1,1]: rainbow 4^3 + 3*2
    assert b.m == 4 * 4 * 4 + 3 * 2
    for n in range(3, 20):
        assert base_construction(3, 4, n).m == base_edge_count(3, 4, n)
    with pytest.raises(ValueError):
        base_construction(3, 4, 2)


def test_add_kpartite_on():
    empty6 = new_hypergraph(3, 6, [])
    aug, parts = add_kpartite_on(empty6, range(6))
    assert aug.m == 8  # 2*2*2
    assert [len(p) for p in parts] == [2, 2, 2]
    e3 = new_hypergraph(3, 4, [(0, 1, 2)])
    aug2, parts2 = add_kpartite_on(e3, [1, 2, 3])
    assert aug2.m == e3.m + 1
    assert sorted(len(p) for p in parts2) == [1, 1, 1]


def test_pairs_of_order():
    assert pairs_of(4) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(pairs_of(6)) == 15


def test_spec_round_trip():
    strings = [
        "L(k=3,l=2)",
        "Z(k=3,l=4)",
        "LZ(k=3,m=2,l=3)",
        "exp(k=3,s=5)",
        "GL(k=3,s=4,l=2)",
        "GL(k=3,s=4,l=2:2:1:1:1:1)",
        "GLZ(k=3,s=4,m=2,l=3)",
        "base(k=3,s=4,n=12)",
        "K(k=2,n=5)",
    ]
    for s in strings:
        spec = parse_family_spec(s)
        assert parse_family_spec(spec.to_string()) == spec
        build_graph(spec)  # must construct


def test_spec_parse_errors_carry_position():
    for text, pos_at in [
        ("nope(k=3)", 0),
        ("Z(k=3,l=4", 9),
        ("Z(k=3,q=4)", None),
        ("Z(k=3,k=4)", None),
        ("Z(k=x)", None),
        ("(k=3)", 0),
    ]:
        with pytest.raises(SpecParseError) as err:
            parse_family_spec(text)
        assert "position" in str(err.value)
        if pos_at is not None:
            assert err.value.position == pos_at


def test_uniform_scalar_and_list_lengths_agree():
    a = build_graph(parse_family_spec("GL(k=3,s=4,l=2)"))
    b = build_graph(parse_family_spec("GL(k=3,s=4,l=2:2:2:2:2:2)"))
    assert a == b


def test_hom_image_family():
    e3 = new_hypergraph(3, 3, [(0, 1, 2)])
    assert hom_image_family(e3) == [e3]
    K3 = complete_kgraph(2, 3)
    fam_k3 = hom_image_family(K3)
    assert len(fam_k3) == 1 and is_isomorphic(fam_k3[0], K3)
    two_edges = new_hypergraph(2, 4, [(0, 1), (2, 3)])
    minimal = hom_image_family(two_edges)
    assert len(minimal) == 1 and minimal[0].m == 1 and minimal[0].n == 2
    with pytest.raises(ValueError):
        hom_image_family(complete_kgraph(2, 13))


def test_build_labeled_covers_every_tag():
    for s in ("L(k=2,l=3)", "Z(k=4,l=2)", "LZ(k=2,m=1,l=3)", "exp(k=4,s=5)",
              "GL(k=2,s=3,l=2)", "GLZ(k=3,s=4,m=1,l=2)", "base(k=2,s=3,n=7)",
              "K(k=3,n=5)"):
        lg = build_labeled(parse_family_spec(s))
        assert lg.graph.n >= 1


def test_inner_partition_sizes_match_near_balanced():
    b = base_construction(3, 4, 11)
    sizes = near_balanced_sizes(11, 3)
    assert sizes == [4, 4, 3]
    assert b.m == base_edge_count(3, 4, 11)
