# SPDX-License-Identifier: Apache-2.0
"""Exact cutting sequences of cube billiard directions and their complexity."""

from __future__ import annotations

import json
from typing import Optional, Union

from ._core import CutseqError, Direction, ParseError, SingularOrbit, factor_counts
from . import _core

__all__ = [
    "CutseqError",
    "Direction",
    "ParseError",
    "SingularOrbit",
    "classify",
    "count_diagonals",
    "cutting_word",
    "factor_counts",
    "parse_direction",
    "profile",
    "verify",
]

DirectionLike = Union[str, Direction]


def parse_direction(text: str) -> Direction:
    return Direction(text)


def _direction(w: DirectionLike) -> Direction:
    return w if isinstance(w, Direction) else Direction(w)


def classify(w: DirectionLike) -> dict:
    return json.loads(_core._classify(_direction(w)))


def cutting_word(w: DirectionLike, length: int, start: Optional[str] = None) -> str:
    return _core._word(_direction(w), length, start)


def profile(w: DirectionLike, length: int = 1_000_000, n_max: int = 100, start: Optional[str] = None,
            seed_points: int = 1) -> dict:
    return json.loads(_core._profile(_direction(w), length, n_max, start, seed_points))


def verify(w: DirectionLike, length: int = 1_000_000, n_max: int = 100, start: Optional[str] = None,
           seed_points: int = 1, partner: Optional[DirectionLike] = None) -> dict:
    p = _direction(partner) if partner is not None else None
    return json.loads(_core._verify(_direction(w), length, n_max, start, seed_points, p))


def count_diagonals(w: DirectionLike, n_max: int) -> list:
    return json.loads(_core._diagonals(_direction(w), n_max))
