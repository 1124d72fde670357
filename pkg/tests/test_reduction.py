import pytest

from homix.errors import ClaimViolation, ImproperColouring, NotNonFlat, TargetUnsuitable
from homix.graph import Graph, VertexMap, induced_subgraph, is_connected, make_complete, make_cycle, make_path
from homix.homology import cycle_class, h1_presentation, is_flat
from homix.homsearch import sample_homs
from homix.reduction import (
    build_Ga,
    build_Gstar,
    check_target,
    drop_plug,
    extract_colouring,
    predicted_rank,
    verify_nt_basis,
    witness_hom,
)

from _oracles import winding_number

C4 = make_cycle(4)
SOURCES = {
    "K1": make_complete(1),
    "K2": make_complete(2),
    "P3": make_path(3, reflexive=False),
    "K3": make_complete(3),
}
# sizes and plug counts computed once and frozen
GSTAR_SIZE = {"K1": 170, "K2": 444, "P3": 992, "K3": 826, "K4": 1316}
PLUGS = {"K1": 3, "K2": 9, "P3": 21, "K3": 18, "K4": 30}


@pytest.fixture(scope="module")
def artifacts():
    return {name: build_Gstar(G, C4) for name, G in SOURCES.items()}


def test_check_target():
    assert len(check_target(C4)) == 4
    with pytest.raises(TargetUnsuitable):
        check_target(make_cycle(3))
    with pytest.raises(TargetUnsuitable):
        check_target(make_path(3))
    with pytest.raises(TargetUnsuitable):
        check_target(Graph.build(8, [(i, (i + 1) % 4) for i in range(4)] + [(4 + i, 4 + (i + 1) % 4) for i in range(4)], reflexive=True))


def test_k1_preliminary():
    pre = build_Ga(make_complete(1), C4)
    # one S3 plus three S2 pair gadgets, no edges
    assert len(pre.copies) == 4
    Tg, _ = induced_subgraph(pre.graph, pre.Tstar)
    assert is_connected(Tg)


def test_tstar_connected_k2():
    pre = build_Ga(make_complete(2), C4)
    Tg, _ = induced_subgraph(pre.graph, pre.Tstar)
    assert is_connected(Tg)


@pytest.mark.parametrize("name", SOURCES)
def test_sizes_and_plugs(artifacts, name):
    R = artifacts[name]
    assert R.Gstar.n == GSTAR_SIZE[name]
    assert len(R.plug_vertices) == len(R.basis_T) == PLUGS[name]
    assert R.plug_vertices == list(range(R.Ga.n, R.Gstar.n))
    for p, w in zip(R.plug_vertices, R.basis_T):
        assert R.Gstar.degree(p) == len(w) and p in R.Gstar.loops


@pytest.mark.parametrize("name", SOURCES)
def test_nt_basis(artifacts, name):
    R = artifacts[name]
    rep = verify_nt_basis(R)
    assert rep.ok, rep.messages
    assert rep.rank == predicted_rank(R.source) == 2 * R.source.n + 1


def test_dropping_a_plug_breaks_the_basis(artifacts):
    R = artifacts["K2"]
    G2 = drop_plug(R)
    rep = verify_nt_basis(R, G2)
    assert not rep.ok
    assert rep.rank == verify_nt_basis(R).rank + 1


def test_witness_k2(artifacts):
    R = artifacts["K2"]
    phi = witness_hom(R, [0, 1])
    assert phi.is_homomorphism() and not is_flat(phi)
    assert all(phi.values[x] == 0 for x in R.Tstar)
    assert all(phi.values[p] == 0 for p in R.plug_vertices)
    P_H = h1_presentation(C4)
    z = cycle_class(P_H, R.Zstar.mapped(phi.values))
    for v, c in enumerate([0, 1]):
        for i in range(3):
            a = cycle_class(P_H, R.Av[(v, i)].mapped(phi.values))
            assert a == (z if i == c else (0,))
    assert winding_number(R.Zstar.mapped(phi.values).vertices, 4) in (1, -1)


@pytest.mark.parametrize("name", SOURCES)
def test_round_trip_every_colouring(artifacts, name):
    from homix.verify import proper_colourings

    R = artifacts[name]
    for c in proper_colourings(R.source):
        assert extract_colouring(R, witness_hom(R, c)) == c


def test_improper_colouring(artifacts):
    R = artifacts["K2"]
    with pytest.raises(ImproperColouring):
        witness_hom(R, [1, 1])
    with pytest.raises(ImproperColouring):
        witness_hom(R, [0, 3])


def test_constant_map_is_not_non_flat(artifacts):
    R = artifacts["K2"]
    with pytest.raises(NotNonFlat):
        extract_colouring(R, [2] * R.Gstar.n)


def test_extract_rejects_inconsistent_maps(artifacts):
    R = artifacts["K1"]
    phi = list(witness_hom(R, [0]).values)
    # unwind A^0_0 by hand: the map is no longer a homomorphism
    for x in R.Av[(0, 0)].vertices:
        phi[x] = 0
    with pytest.raises(Exception):
        extract_colouring(R, phi)


def test_extraction_from_sampled_maps(artifacts):
    R = artifacts["K2"]
    zc = R.Zcycle_H.vertices
    pins = {x: zc[k] for k, x in enumerate(R.Zstar.vertices)}
    hs = sample_homs(R.Gstar, C4, pins, k=10, seed=11)
    for m in hs.maps:
        c = extract_colouring(R, m)
        assert c[0] != c[1]
