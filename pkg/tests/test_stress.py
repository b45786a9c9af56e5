"""Heavier regressions: a cubic-relation self-injective algebra and runs
over the rationals."""

import pytest

from siltlab import presets
from siltlab.explorer import ExplorerConfig, bfs, hasse_check
from siltlab.mutation import bb_tilting, okuyama_rickard
from siltlab.quiver import QuiverPresentation, build_algebra
from siltlab.silting import SiltingObject, algebra_object, is_tilting
from siltlab.workspace import Workspace


def cubic_two_cycle(char=32003):
    return QuiverPresentation(
        vertices=["1", "2"],
        arrows=[("a", "1", "2"), ("b", "2", "1")],
        relations=[[(1, ["a", "b", "a"])], [(1, ["b", "a", "b"])]],
        field_char=char,
        path_length_cap=8,
    )


def test_cubic_two_cycle_quiver():
    alg = build_algebra(cubic_two_cycle())
    assert alg.dim == 6
    ws = Workspace(alg)
    A = algebra_object(ws)
    g = bfs(ws, A, ExplorerConfig(depth=2, directions="both"))
    assert all(n.certificate_status == "Verified" for n in g.nodes)
    assert hasse_check(ws, g)["violations"] == []
    # the algebra is symmetric, so every silting object must be tilting
    assert all(is_tilting(ws, SiltingObject(n.ids, None)) for n in g.nodes)


@pytest.mark.parametrize("name", ["a2", "two_cycle"])
def test_rational_field_end_to_end(name):
    ws = Workspace.from_presentation(presets.preset(name, char=0))
    A = algebra_object(ws)
    g = bfs(ws, A, ExplorerConfig(depth=2, directions="both"))
    assert all(n.certificate_status == "Verified" for n in g.nodes)
    assert hasse_check(ws, g)["violations"] == []


def test_rational_constructions():
    ws = Workspace.from_presentation(presets.a2(char=0))
    assert bb_tilting(ws, 1).matches_left_mutation
    assert okuyama_rickard(ws, [0]).matches_right_mutation


def test_kronecker_deeper_bfs():
    ws = Workspace.from_presentation(presets.kronecker())
    A = algebra_object(ws)
    g = bfs(ws, A, ExplorerConfig(depth=4, directions="left"))
    assert all(n.certificate_status == "Verified" for n in g.nodes)
    # preprojective-side cones keep growing, so depth 4 must stay exhausted-free
    assert len(g.nodes) >= 9
