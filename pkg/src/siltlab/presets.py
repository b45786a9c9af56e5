"""Bundled example algebras used throughout the test corpus and the UI."""

from __future__ import annotations

from .quiver import QuiverPresentation

DEFAULT_CHAR = 32003


def a2(char: int = DEFAULT_CHAR) -> QuiverPresentation:
    return QuiverPresentation(
        vertices=["1", "2"],
        arrows=[("a", "1", "2")],
        relations=[],
        field_char=char,
        path_length_cap=8,
    )


def a3(char: int = DEFAULT_CHAR) -> QuiverPresentation:
    return QuiverPresentation(
        vertices=["1", "2", "3"],
        arrows=[("a", "1", "2"), ("b", "2", "3")],
        relations=[],
        field_char=char,
        path_length_cap=8,
    )


def kronecker(char: int = DEFAULT_CHAR) -> QuiverPresentation:
    return QuiverPresentation(
        vertices=["1", "2"],
        arrows=[("a", "1", "2"), ("b", "1", "2")],
        relations=[],
        field_char=char,
        path_length_cap=8,
    )


def two_cycle(char: int = DEFAULT_CHAR) -> QuiverPresentation:
    """1 <-> 2 with ab = 0 = ba."""
    return QuiverPresentation(
        vertices=["1", "2"],
        arrows=[("a", "1", "2"), ("b", "2", "1")],
        relations=[[(1, ["a", "b"])], [(1, ["b", "a"])]],
        field_char=char,
        path_length_cap=8,
    )


def dual_numbers(char: int = DEFAULT_CHAR) -> QuiverPresentation:
    """k[x]/x^2: one vertex with a loop squaring to zero."""
    return QuiverPresentation(
        vertices=["1"],
        arrows=[("x", "1", "1")],
        relations=[[(1, ["x", "x"])]],
        field_char=char,
        path_length_cap=8,
    )


def simple(char: int = DEFAULT_CHAR) -> QuiverPresentation:
    """The base field itself: one vertex, no arrows."""
    return QuiverPresentation(
        vertices=["1"], arrows=[], relations=[], field_char=char, path_length_cap=4
    )


PRESETS = {
    "a2": a2,
    "a3": a3,
    "kronecker": kronecker,
    "two_cycle": two_cycle,
    "dual_numbers": dual_numbers,
    "simple": simple,
}


def preset(name: str, char: int = DEFAULT_CHAR) -> QuiverPresentation:
    try:
        return PRESETS[name](char)
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
