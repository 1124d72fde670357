import pytest

from homix.graph import make_cycle
from homix.verify import SUITES, connected_graphs, proper_colourings, run_suite
from homix.graph import make_complete


def test_connected_graph_counts():
    # connected labelled graphs on 1..4 vertices: 1, 1, 4, 38
    assert [sum(1 for _ in connected_graphs(n)) for n in range(1, 5)] == [1, 1, 4, 38]


def test_proper_colourings():
    assert len(list(proper_colourings(make_complete(3)))) == 6
    assert list(proper_colourings(make_complete(4))) == []


@pytest.mark.parametrize("suite,trials", [
    ("slice-invariance", 60),
    ("surgery-lemmas", 30),
    ("flat-equals-constant-component", None),
])
def test_small_runs(suite, trials):
    rep = run_suite(suite, seed=1, trials=trials)
    assert rep.ok and rep.exit_code() == 0 and rep.cases > 0


def test_report_is_deterministic():
    a = run_suite("slice-invariance", seed=5, trials=40).to_dict()
    b = run_suite("slice-invariance", seed=5, trials=40).to_dict()
    assert a == b and "timings" not in a


def test_exit_codes():
    rep = run_suite("surgery-lemmas", seed=0, trials=6)
    rep.undecided = 1
    assert rep.exit_code() == 3
    rep.fail("x", "boom")
    assert rep.exit_code() == 1 and not rep.ok


def test_suite_names():
    assert set(SUITES) == {"slice-invariance", "surgery-lemmas", "sum-gadget", "flat-equals-constant-component", "end-to-end"}


@pytest.mark.slow
def test_flat_iff_constant_five_vertices():
    from homix.verify import flat_equals_constant_component

    rep = flat_equals_constant_component(limits=((4, 5),))
    assert rep.ok and not rep.undecided and rep.cases > 100000
