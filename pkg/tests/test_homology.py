import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homix.errors import BudgetExceeded, InvalidWalk
from homix.gadgets import beta_map
from homix.graph import ClosedWalk, Graph, VertexMap, add_cone, make_complete, make_cycle, make_path, tensor_product
from homix.homology import (
    build_chain_complex,
    cycle_class,
    flat_profile,
    h1_presentation,
    image_class,
    is_flat,
    nt_basis,
    walk_chain,
)

from _oracles import betti1_rational

RP2_TRIANGLES = [(1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6)]


def barycentric(triangles):
    faces = set()
    for t in triangles:
        for k in (1, 2, 3):
            faces.update(itertools.combinations(t, k))
    faces = sorted(faces)
    idx = {f: i for i, f in enumerate(faces)}
    edges = [(idx[a], idx[b]) for a in faces for b in faces if len(a) < len(b) and set(a) <= set(b)]
    return Graph.build(len(faces), edges)


def two_squares():
    return Graph.build(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)], reflexive=True)


def test_chain_complex_shapes():
    cc = build_chain_complex(make_cycle(4))
    assert len(cc.edges) == 4 and not cc.triangles
    cc = build_chain_complex(make_cycle(3))
    assert len(cc.edges) == 3 and len(cc.triangles) == 1
    assert h1_presentation(make_cycle(3)).rank == 0


@pytest.mark.parametrize("seed", range(100))
def test_boundary_of_boundary(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    assert build_chain_complex(Graph.build(n, es)).boundary_is_zero()


@pytest.mark.parametrize("g", [4, 5, 6, 9])
def test_cycles(g):
    P = h1_presentation(make_cycle(g))
    assert (P.rank, P.torsion) == (1, [])
    assert cycle_class(P, ClosedWalk(tuple(range(g)))) in [(1,), (-1,)]


def test_small_corpus():
    assert h1_presentation(make_path(6)).rank == 0
    W = add_cone(make_cycle(4), ClosedWalk((0, 1, 2, 3)))
    assert h1_presentation(W).rank == 0 and nt_basis(W) == []
    assert len(nt_basis(make_cycle(5))) == 1
    basis = nt_basis(two_squares())
    assert len(basis) == 2 and all(len(w) == 4 for w in basis)


def test_rp2_torsion():
    G = barycentric(RP2_TRIANGLES)
    # sanity on the input: a closed surface with Euler characteristic 1
    edges = {e for t in RP2_TRIANGLES for e in itertools.combinations(t, 2)}
    assert 6 - len(edges) + len(RP2_TRIANGLES) == 1
    P = h1_presentation(G)
    assert (P.rank, P.torsion) == (0, [2])
    assert len(P.torsion_cycles) == 1
    w = P.torsion_cycles[0]
    assert cycle_class(P, w) == (1,)
    doubled = ClosedWalk(w.vertices + w.vertices)
    assert cycle_class(P, doubled) == (0,)


@pytest.mark.parametrize("l", [1, 2, 3, 4])
@pytest.mark.parametrize("g", [4, 5, 6])
def test_path_times_cycle_rank(l, g):
    P = h1_presentation(tensor_product(make_path(l), make_cycle(g)))
    assert (P.rank, P.torsion) == (1, [])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_rank_matches_rational_oracle(data):
    n, es = data
    G = Graph.build(n, [e for e in es if e[0] != e[1]])
    P = h1_presentation(G)
    assert P.rank == betti1_rational(G)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 12), st.data())
def test_triangle_free_graphs_have_no_torsion(n, data):
    # bipartite, hence triangle-free
    left = n // 2
    es = data.draw(st.sets(st.tuples(st.integers(0, left - 1), st.integers(left, n - 1))))
    P = h1_presentation(Graph.build(n, es))
    assert P.torsion == []


def test_trivial_walks():
    C4 = make_cycle(4)
    P = h1_presentation(C4)
    assert cycle_class(P, ClosedWalk((2,))) == (0,)
    assert cycle_class(P, ClosedWalk((0, 1))) == (0,)
    fwd = cycle_class(P, ClosedWalk((0, 1, 2, 3)))
    assert cycle_class(P, ClosedWalk((0, 3, 2, 1))) == tuple(-x for x in fwd)
    assert cycle_class(P, ClosedWalk((0, 0, 1, 2, 2, 3))) == fwd


def test_walk_must_follow_edges():
    with pytest.raises(InvalidWalk):
        walk_chain(ClosedWalk((0, 2)), make_cycle(4))


def test_image_class_examples():
    C4 = make_cycle(4)
    P = h1_presentation(C4)
    w = ClosedWalk((0, 1, 2, 3))
    const = VertexMap(C4, C4, (1, 1, 1, 1))
    assert image_class(const, w, P) == (0,)
    ident = VertexMap(C4, C4, (0, 1, 2, 3))
    assert abs(image_class(ident, w, P)[0]) == 1
    beta = beta_map(3, 4)
    B = ClosedWalk(tuple(range(12)))
    assert image_class(beta, B, P) == image_class(ident, w, P)


def test_flatness():
    C4 = make_cycle(4)
    assert not is_flat(VertexMap(C4, C4, (0, 1, 2, 3)))
    assert is_flat(VertexMap(C4, C4, (3, 3, 3, 3)))
    tree = make_path(4)
    assert is_flat(VertexMap(tree, C4, (0, 1, 2, 3, 0)))
    assert flat_profile(VertexMap(C4, C4, (0, 1, 0, 1))) == [(0,)]


def test_disconnected_graph_coordinates():
    G = Graph.build(9, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)])
    P = h1_presentation(G)
    assert P.rank == 2
    a = cycle_class(P, ClosedWalk((0, 1, 2, 3)))
    b = cycle_class(P, ClosedWalk((4, 5, 6, 7, 8)))
    assert sorted(map(abs, a + b)) == [0, 0, 1, 1]


def test_dense_limit():
    # the product reduces by unit pivots alone; the projective plane needs a dense block
    assert h1_presentation(tensor_product(make_path(2), make_cycle(6)), max_dense=0).rank == 1
    with pytest.raises(BudgetExceeded):
        h1_presentation(barycentric(RP2_TRIANGLES), max_dense=0)


def test_irreflexive_complete():
    assert h1_presentation(make_complete(5)).rank == 0


@pytest.mark.parametrize("seed", range(10))
def test_flatness_does_not_depend_on_tree_root(seed):
    from homix.homsearch import sample_homs

    rng = random.Random(seed)
    G = tensor_product(make_path(1), make_cycle(rng.choice([4, 5, 8])))
    G = Graph.build(G.n + 2, set(G.edges) | {(0, G.n), (G.n, G.n + 1)}, reflexive=True)
    H = make_cycle(4)
    P_H = h1_presentation(H)
    P_a = h1_presentation(G)
    P_b = h1_presentation(G, roots=[G.n - 1])
    for m in sample_homs(G, H, k=20, seed=seed).maps:
        phi = VertexMap(G, H, m)
        assert is_flat(phi, P_a, P_H) == is_flat(phi, P_b, P_H)
