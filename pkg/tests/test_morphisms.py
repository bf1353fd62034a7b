"""Embedding/homomorphism search against brute-force oracles, plus the
row-trace machinery and the blow-up projection pipeline."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab import families as fam
from turanlab.hypercore import (
    automorphism_count,
    blow_up,
    complete_kgraph,
    complete_multipartite,
    new_hypergraph,
    relabel,
)
from turanlab.morphisms import (
    UNKNOWN,
    RowTrace,
    VertexMap,
    assemble_glz_hom,
    close_zycle,
    contains_copy,
    count_embeddings,
    cycle_multiply,
    find_embedding,
    find_homomorphism,
    is_free,
    lz_contraction_hom,
    validate_row_trace,
    verify_embedding,
    verify_homomorphism,
)

K3 = complete_kgraph(2, 3)
K4 = complete_kgraph(2, 4)
K43 = complete_kgraph(3, 4)
C5 = new_hypergraph(2, 5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


def brute_hom(F, H):
    for img in itertools.product(range(H.n), repeat=F.n):
        if all(
            len({img[v] for v in e}) == F.k
            and tuple(sorted(img[v] for v in e)) in H.edge_set
            for e in F.edges
        ):
            return img
    return None


def brute_emb_count(F, H):
    cnt = 0
    for img in itertools.permutations(range(H.n), F.n):
        if all(tuple(sorted(img[v] for v in e)) in H.edge_set for e in F.edges):
            cnt += 1
    return cnt


ZOO = [
    K3, K4, complete_kgraph(3, 4), complete_kgraph(3, 5),
    complete_multipartite(2, [2, 2]), complete_multipartite(3, [2, 2, 1]),
    complete_multipartite(3, [2, 1, 1, 1]), C5,
    new_hypergraph(3, 6, [(0, 1, 2), (2, 3, 4), (3, 4, 5), (0, 4, 5)]),
    new_hypergraph(3, 5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)]),
    new_hypergraph(2, 4, [(0, 1), (2, 3)]),
    new_hypergraph(3, 4, []),
    fam.zycle(3, 3).graph, fam.ladder(3, 2).graph,
]


def test_search_agrees_with_brute_force_over_zoo():
    pairs = 0
    for F in ZOO:
        for H in ZOO:
            if F.k != H.k or F.n > 7 or H.n > 7:
                continue
            pairs += 1
            bh = brute_hom(F, H)
            vh = find_homomorphism(F, H)
            assert (bh is None) == (vh is None)
            if vh is not None:
                assert verify_homomorphism(F, H, vh)
            bc = brute_emb_count(F, H)
            assert count_embeddings(H, F) == bc
            ve = find_embedding(F, H)
            assert (bc > 0) == (ve is not None)
            if ve is not None:
                assert verify_embedding(F, H, ve)
                assert bc % automorphism_count(F) == 0
    assert pairs > 80


def test_count_spec_examples():
    assert count_embeddings(K4, K3) == 24
    assert count_embeddings(K43, new_hypergraph(3, 3, [(0, 1, 2)])) == K43.m * 6
    assert count_embeddings(K3, K4) == 0  # host too small
    assert contains_copy(K4, K3) is True
    assert is_free(complete_multipartite(2, [2, 2]), [K3]) is True
    assert is_free(complete_kgraph(3, 6), [new_hypergraph(3, 3, [(0, 1, 2)])]) is False
    assert is_free(K4, []) is True


def test_pins():
    hit = find_embedding(K3, K4, pin={0: 3})
    assert hit is not None and hit.image[0] == 3
    assert find_embedding(K3, C5, pin={0: 0}) is None
    with pytest.raises(ValueError):
        find_embedding(K3, K4, pin={0: 1, 1: 1})  # embeddings are injective
    hom = find_homomorphism(complete_multipartite(2, [2, 2]), K3, pin={0: 1, 1: 1})
    assert hom is not None and hom.image[0] == hom.image[1] == 1
    ident = find_homomorphism(K3, K3, pin={0: 0, 1: 1, 2: 2})
    assert ident is not None and ident.image == (0, 1, 2)


def test_verify_rejects_bad_maps():
    const = VertexMap("hom", K3, K4, (0, 0, 0))
    assert not verify_homomorphism(K3, K4, const)
    # non-injective map fails embedding verification but not hom
    fold = find_homomorphism(new_hypergraph(2, 4, [(0, 1), (2, 3)]), K3, pin={0: 0, 2: 0})
    assert fold is not None
    assert not verify_embedding(fold.source, K3, fold)


def test_unknown_semantics():
    res = find_embedding(complete_kgraph(2, 11), complete_multipartite(2, [6] * 5),
                         time_limit=0.005)
    assert res is UNKNOWN or res is None
    with pytest.raises(TypeError):
        bool(UNKNOWN)


def test_uniformity_mismatch_raises():
    with pytest.raises(ValueError):
        find_homomorphism(K3, K43)


def test_zycle_wrap_golden_values():
    z4, z3, z2 = fam.zycle(3, 4).graph, fam.zycle(3, 3).graph, fam.zycle(3, 2).graph
    wrap = find_homomorphism(z4, z2)
    assert wrap is not None and verify_homomorphism(z4, z2, wrap)
    # exhaustive search: no odd wrap exists
    assert find_homomorphism(z3, z2) is None
    assert find_embedding(z2, z4) is None


# --- row traces and cycling -------------------------------------------------


def test_row_trace_and_close_zycle():
    tr = RowTrace(K43, ((0, 1), (2, 3), (0, 1), (2, 3)), (1, 2, 3, 4))
    assert validate_row_trace(tr)
    zc = close_zycle(tr, 0, 2)
    assert verify_homomorphism(zc.source, K43, zc)
    assert {zc.image[v] for v in fam.zycle(3, 2).starting_sets[0]} == {0, 1}
    with pytest.raises(ValueError):
        close_zycle(tr, 0, 1)  # consecutive rows are never set-equal
    with pytest.raises(ValueError):
        close_zycle(tr, 0, 3)  # rows not set-equal
    bad = RowTrace(K43, ((0, 1), (0, 2)), (1, 2))
    assert not validate_row_trace(bad)


def test_cycle_multiply():
    tr = RowTrace(K43, ((0, 1), (2, 3), (0, 1)), (1, 2, 3))
    zc = close_zycle(tr, 0, 2)
    for r in (2, 3, 4):
        big = cycle_multiply(zc, r)
        assert verify_homomorphism(big.source, K43, big)
        assert big.source.n == fam.zycle(3, 2 * r).graph.n
        start = fam.zycle(3, 2 * r).starting_sets[0]
        assert {big.image[v] for v in start} == {0, 1}
    assert cycle_multiply(zc, 1) is zc
    not_zycle = VertexMap("hom", fam.ladder(3, 2).graph, K43, (0, 1, 2, 3, 0))
    with pytest.raises(ValueError):
        cycle_multiply(not_zycle, 2)


def test_lz_contraction_grid():
    for k in (2, 3, 4):
        for L in (2, 3, 4):
            for j in (1, 2, 3):
                for jp in (j, j + 1, j + 3):
                    vm = lz_contraction_hom(k, j, jp, L)
                    assert verify_homomorphism(vm.source, vm.target, vm)
    with pytest.raises(ValueError):
        lz_contraction_hom(3, 3, 2, 4)  # needs j <= j'


# --- pipeline ---------------------------------------------------------------


def test_pipeline_on_k4():
    res = assemble_glz_hom(K43, s=4, blow_factor=24)
    assert res is not None and res is not UNKNOWN
    assert verify_homomorphism(res.glz.graph, K43, res.hom)
    assert res.ladder_len == math.comb(4, 2) + 1
    assert res.cycle_len == math.lcm(*res.pair_cycle_lengths.values())
    for pair, (a, b) in res.pair_repeats.items():
        assert b - a >= 2
        xs = {res.x_images[pair[0] - 1], res.x_images[pair[1] - 1]}
        assert xs <= res.pair_start_images[pair]


def test_pipeline_k2_host():
    K4g = complete_kgraph(2, 4)
    res = assemble_glz_hom(K4g, s=3, blow_factor=12)
    assert res is not None and res is not UNKNOWN
    assert verify_homomorphism(res.glz.graph, K4g, res.hom)


def test_pipeline_absent_on_empty_host():
    empty6 = new_hypergraph(3, 6, [])
    assert assemble_glz_hom(empty6, s=4, blow_factor=8) is None


# --- properties -------------------------------------------------------------


@st.composite
def tiny_graphs(draw):
    k = draw(st.integers(2, 3))
    n = draw(st.integers(k, 5))
    pool = list(itertools.combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    return new_hypergraph(k, n, sorted(edges))


@given(tiny_graphs(), st.integers(2, 3))
@settings(max_examples=25)
def test_pattern_embeds_in_own_blow_up(g, t):
    if g.m == 0:
        return
    hit = find_embedding(g, blow_up(g, t))
    assert hit is not None and verify_embedding(g, blow_up(g, t), hit)


@given(tiny_graphs(), st.randoms(use_true_random=False))
@settings(max_examples=25)
def test_count_is_host_relabel_invariant(g, rnd):
    F = K3 if g.k == 2 else new_hypergraph(3, 3, [(0, 1, 2)])
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert count_embeddings(g, F) == count_embeddings(relabel(g, perm), F)
