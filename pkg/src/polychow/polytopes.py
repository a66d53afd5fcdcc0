"""Lattice points of independence and base polytopes, and cube slicing.

Enumeration walks the box prod [0, rk({i})] and filters by all 2^m rank
inequalities, so the cost is O(prod (rk(i) + 1) * 2^m).  Output is in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .core import (GroundData, Polymatroid, in_independence_polytope,
                   validate)


def independence_points(p: Polymatroid) -> list[tuple[int, ...]]:
    ranges = [range(p.rank[1 << i] + 1) for i in range(p.m)]
    return [x for x in product(*ranges) if in_independence_polytope(p, x)]


def base_points(p: Polymatroid) -> list[tuple[int, ...]]:
    return [x for x in independence_points(p) if sum(x) == p.r]


def rank_from_points(points: Sequence[Sequence[int]],
                     ground: GroundData | Sequence[int]) -> list[int]:
    """rk(S) = max over the points of sum_{i in S} x_i."""
    if not points:
        raise ValueError("rank_from_points needs at least one point")
    ground = ground if isinstance(ground, GroundData) else GroundData(tuple(ground))
    m = ground.m
    table = [0] * (1 << m)
    for x in points:
        if len(x) != m or any(v < 0 for v in x):
            raise ValueError(f"point {tuple(x)} is not a nonnegative vector of length {m}")
        sums = [0] * (1 << m)
        for s in range(1, 1 << m):
            low = s & -s
            sums[s] = sums[s ^ low] + x[low.bit_length() - 1]
            if sums[s] > table[s]:
                table[s] = sums[s]
    return table


def greedy_vertex(p: Polymatroid, order: Sequence[int]) -> tuple[int, ...]:
    """Vertex of I(P) produced by the greedy algorithm for the given order."""
    x = [0] * p.m
    prefix = 0
    for i in order:
        x[i] = p.rank[prefix | (1 << i)] - p.rank[prefix]
        prefix |= 1 << i
    return tuple(x)


@dataclass(frozen=True)
class Cell:
    translation: tuple[int, ...]
    matroid: Polymatroid


def cube_slice(q: Polymatroid, maximal_only: bool = True) -> list[Cell]:
    """Cut I(Q) by the unit-cube tiling of R^n.

    Each nonempty piece (I(Q) - v) cap [0,1]^n is I(M_v) for a matroid M_v.
    Because I(Q) is down-closed in the orthant, the nonempty pieces are
    indexed by the lattice points v of I(Q).  A piece that lies inside
    another one is a face of it, not a cell of the subdivision; such pieces
    are dropped unless ``maximal_only`` is false.
    """
    n = q.m
    points = independence_points(q)
    inside = set(points)
    unit = GroundData((1,) * n)
    pieces = []
    for v in points:
        corners = []
        for w in product((0, 1), repeat=n):
            if tuple(vi + wi for vi, wi in zip(v, w)) in inside:
                corners.append(w)
        pieces.append((tuple(v), corners))
    shifted = [{tuple(vi + wi for vi, wi in zip(v, w)) for w in corners} for v, corners in pieces]
    cells = []
    for k, (v, corners) in enumerate(pieces):
        if maximal_only and any(shifted[k] < other for other in shifted):
            continue
        table = rank_from_points(corners, unit)
        matroid = validate(table, unit)
        if set(independence_points(matroid)) != set(corners):
            raise AssertionError(f"cell at {v} is not a matroid independence polytope")
        cells.append(Cell(v, matroid))
    return cells
