"""Polygon grid decomposition (adaptive and uniform) and coverage-time planning."""

from ._core import *  # noqa: F401,F403
from ._core import (
    DEFAULT_EXACT_CAP,
    DEFAULT_RADIUS,
    DEFAULT_SPEED,
    Decomposition,
    DegeneratePolygon,
    Error,
    ValidationError,
    compare_methods,
    decompose,
    solve_paper_mode,
    solve_valid_path,
)

__all__ = [
    "DEFAULT_EXACT_CAP",
    "DEFAULT_RADIUS",
    "DEFAULT_SPEED",
    "Decomposition",
    "DegeneratePolygon",
    "Error",
    "ValidationError",
    "compare_methods",
    "decompose",
    "solve_paper_mode",
    "solve_valid_path",
]
