import json

import pytest

from siltlab import presets
from siltlab.explorer import ExplorerConfig, bfs, export_dot, export_json, hasse_check
from siltlab.silting import algebra_object
from siltlab.workspace import Workspace


@pytest.fixture(scope="module")
def ws_tc():
    return Workspace.from_presentation(presets.two_cycle())


@pytest.fixture(scope="module")
def ws_dn():
    return Workspace.from_presentation(presets.dual_numbers())


def test_two_cycle_depth1_left(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=1, directions="left"))
    assert len(g.nodes) == 3
    assert len(g.arrows) == 2
    assert all(a.source == 0 for a in g.arrows)


def test_two_cycle_depth2_left(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=2, directions="left"))
    # A, two depth-1 nodes, four depth-2 nodes
    assert len(g.nodes) == 7
    depth2 = [n for n in g.nodes if n.depth == 2]
    assert len(depth2) == 4


def test_dual_numbers_chain(ws_dn):
    A = algebra_object(ws_dn)
    g = bfs(ws_dn, A, ExplorerConfig(depth=3, directions="both"))
    # shifts A[-3..3]
    assert len(g.nodes) == 7
    assert len(g.arrows) == 6
    report = hasse_check(ws_dn, g)
    assert report["violations"] == []


def test_simple_algebra_chain():
    ws = Workspace.from_presentation(presets.simple())
    A = algebra_object(ws)
    g = bfs(ws, A, ExplorerConfig(depth=3, directions="both"))
    assert len(g.nodes) == 7
    assert len(g.arrows) == 6


def test_hasse_check_two_cycle(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=2, directions="left"))
    report = hasse_check(ws_tc, g)
    assert report["violations"] == []


def test_single_node_graph(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=0, directions="left"))
    assert len(g.nodes) == 1
    assert g.arrows == []
    assert hasse_check(ws_tc, g)["violations"] == []


def test_mod_shift_dual_numbers(ws_dn):
    A = algebra_object(ws_dn)
    g = bfs(ws_dn, A, ExplorerConfig(depth=2, directions="both", mod_shift=True))
    assert len(g.nodes) == 1  # all shifts identified
    assert len(g.arrows) == 1  # the wrap-around left mutation


def test_export_dot_json(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=1, directions="left"))
    dot = export_dot(ws_tc, g)
    assert dot.startswith("digraph") and dot.count("->") == 2
    data = json.loads(export_json(ws_tc, g))
    assert len(data["nodes"]) == 3
    assert len(data["arrows"]) == 2
    assert data["field_char"] == ws_tc.alg.field.char
    for n in data["nodes"]:
        assert n["certificate"] == "Verified"


def test_empty_exportable(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=0))
    assert "digraph" in export_dot(ws_tc, g)


def test_every_node_certified(ws_tc):
    A = algebra_object(ws_tc)
    g = bfs(ws_tc, A, ExplorerConfig(depth=2, directions="both"))
    assert all(n.certificate_status == "Verified" for n in g.nodes)
