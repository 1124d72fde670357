import pytest

from homix.errors import ClaimViolation, InvalidGraph
from homix.gadgets import (
    alpha_map,
    alpha_values,
    beta_map,
    beta_values,
    build_sum_gadget,
    check_gamma,
    find_ell,
    gamma_colouring,
    is_hom_walk,
)
from homix.graph import ClosedWalk, VertexMap, make_cycle, set_distance, tensor_product, make_path
from homix.homology import cycle_class, h1_presentation, image_class, is_flat
from homix.surgery import spans

from _oracles import winding_number

SHAPES = [(2, 4), (3, 4), (2, 5)]
# computed once by BFS over Hom(B, Z) and frozen here
ELL = {(2, 4): 4, (3, 4): 4, (2, 5): 5}
SIZE = {(2, 4): 43, (3, 4): 62, (2, 5): 64}


def word(vals):
    return "".join(map(str, vals))


def test_beta_and_alpha_words():
    assert word(beta_values(3, 4)) == "000111222333"
    assert word(alpha_values(0, 3, 4)) == "012300000000"
    assert word(alpha_values(1, 3, 4)) == "000001230000"
    assert word(alpha_values(2, 3, 4)) == "000000000123"


@pytest.mark.parametrize("s,g", SHAPES + [(3, 5), (4, 4)])
def test_beta_alpha_are_homs_with_equal_winding(s, g):
    B = ClosedWalk(tuple(range(s * g)))
    P = h1_presentation(make_cycle(g))
    b = image_class(beta_map(s, g), B, P)
    assert abs(b[0]) == 1
    for k in range(s):
        assert image_class(alpha_map(k, s, g), B, P) == b
    assert winding_number(beta_values(s, g), g) == 1


def test_bad_parameters():
    with pytest.raises(InvalidGraph):
        beta_map(1, 4)
    with pytest.raises(InvalidGraph):
        alpha_map(3, 3, 4)


def test_displayed_path_is_a_hom_walk():
    words = ["000111222333", "011111222333", "012222222333", "012333333333", "012300000000"]
    assert is_hom_walk([[int(c) for c in w] for w in words], make_cycle(12), make_cycle(4))
    assert not is_hom_walk([[int(c) for c in words[0]], [int(c) for c in words[2]]], make_cycle(12), make_cycle(4))


@pytest.mark.parametrize("s,g", SHAPES)
def test_find_ell(s, g):
    er = find_ell(s, g)
    assert er.ell == ELL[(s, g)]
    X = tensor_product(make_path(er.ell), make_cycle(s * g))
    for i in range(s):
        assert er.slice(i, 0) == alpha_values(i, s, g)
        assert er.slice(i, er.ell) == beta_values(s, g)
        assert er.maps[i].source == X
        assert is_hom_walk(er.paths[i], make_cycle(s * g), make_cycle(g))


@pytest.mark.parametrize("s,g", SHAPES)
def test_sum_gadget_structure(s, g):
    S = build_sum_gadget(s, g)
    assert S.graph.n == SIZE[(s, g)]
    assert S.graph.reflexive
    ends = S.end_cycles
    assert len(ends) == s + 1 and all(len(w) == g and w.is_simple() for w in ends)
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            assert set_distance(S.graph, ends[a].vertices, ends[b].vertices) >= 2
    assert set(S.zero_vertices.values()) <= S.T


@pytest.mark.parametrize("s,g", SHAPES)
def test_sum_gadget_homology(s, g):
    S = build_sum_gadget(s, g)
    P = h1_presentation(S.graph)
    assert (P.rank, P.torsion) == (s, [])
    A = [cycle_class(P, w) for w in S.A]
    assert list(cycle_class(P, S.Z)) == [sum(c) for c in zip(*A)]
    # any s of the s+1 end cycles generate
    for drop in range(s + 1):
        rest = [w for k, w in enumerate(S.end_cycles) if k != drop]
        assert spans(S.graph, rest, P)


@pytest.mark.parametrize("s,g", SHAPES)
def test_gamma_profile(s, g):
    S = build_sum_gadget(s, g)
    P_Z = h1_presentation(make_cycle(g))
    for i in range(s):
        Gam = gamma_colouring(S, i)
        vals = Gam.values
        assert [vals[v] for v in S.A[i].vertices] == list(range(g))
        for j in range(s):
            if j != i:
                assert not any(vals[v] for v in S.A[j].vertices)
        assert all(vals[v] == 0 for v in S.T)
        # winding of Gamma(Z) equals the sum over the A_j, which is 1
        assert winding_number([vals[v] for v in S.Z.vertices], g) == 1
        assert not is_flat(Gam, P_H=P_Z)


def test_gamma_check_rejects_tampering():
    S = build_sum_gadget(2, 4)
    Gam = gamma_colouring(S, 0)
    with pytest.raises(ClaimViolation):
        check_gamma(S, Gam, 1)
    vals = list(Gam.values)
    vals[next(iter(S.T))] = 1
    with pytest.raises(ClaimViolation):
        check_gamma(S, VertexMap(S.graph, Gam.target, tuple(vals)), 0)
    with pytest.raises(InvalidGraph):
        gamma_colouring(S, 2)
