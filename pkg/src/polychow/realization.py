"""Polymatroids from subspaces L of V = V_1 + ... + V_m, given as exact
rational row bases."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import GroundData, Polymatroid, PolymatroidError, validate
from .lift import GroundMap
from .linalg import bareiss_rank, nullspace

MAX_ATTEMPTS = 1000


class RankDeficientError(PolymatroidError):
    kind = "RankDeficient"


class RealizationGaveUpError(PolymatroidError):
    kind = "RealizationGaveUp"


@dataclass(frozen=True)
class RealizationMatrix:
    blocks: tuple[int, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        n = sum(blocks)
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if not blocks or any(b < 0 for b in blocks):
            raise ValueError(f"invalid block sizes {blocks}")
        for row in rows:
            if len(row) != n:
                raise ValueError(f"row of length {len(row)} in a matrix with {n} columns")
        if bareiss_rank(rows) != len(rows):
            raise RankDeficientError("rows are linearly dependent", witness=(len(rows),))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def l(self) -> int:
        return len(self.rows)

    def ground_map(self) -> GroundMap:
        return GroundMap(self.blocks)

    def columns(self, mask: int) -> list[list[Fraction]]:
        """The column submatrix on EE-mask `mask`, returned row-major."""
        keep = [j for j in range(self.n) if mask >> j & 1]
        return [[row[j] for j in keep] for row in self.rows]


def rank_function(r: RealizationMatrix) -> Polymatroid:
    pi = r.ground_map()
    table = [bareiss_rank(r.columns(pi.preimage(s))) if s else 0
             for s in range(1 << pi.m)]
    return validate(table, GroundData(r.blocks))


def column_matroid(r: RealizationMatrix) -> Polymatroid:
    """The matroid on the n individual columns."""
    table = [bareiss_rank(r.columns(s)) if s else 0 for s in range(1 << r.n)]
    return validate(table, GroundData((1,) * r.n))


def realize_dual(r: RealizationMatrix) -> RealizationMatrix:
    """Rows spanning the annihilator of L in the dual space."""
    basis = nullspace([list(row) for row in r.rows], r.n)
    return RealizationMatrix(r.blocks, tuple(tuple(v) for v in basis))


def random_realization(ground: GroundData | Sequence[int], l: int, seed: int,
                       entry_bound: int = 3, max_attempts: int = MAX_ATTEMPTS) -> RealizationMatrix:
    blocks = ground.a if isinstance(ground, GroundData) else tuple(ground)
    n = sum(blocks)
    if not 0 <= l <= n:
        raise ValueError(f"need 0 <= l <= {n}, got {l}")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        rows = [[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(l)]
        if bareiss_rank(rows) == l:
            return RealizationMatrix(tuple(blocks), tuple(tuple(Fraction(v) for v in row) for row in rows))
    raise RealizationGaveUpError(f"no independent rows after {max_attempts} attempts",
                                 witness=(l, seed))


def change_block_bases(r: RealizationMatrix, rng: random.Random,
                       entry_bound: int = 5) -> RealizationMatrix:
    """Right-multiply by a random invertible block-diagonal matrix."""
    cols = [[row[j] for row in r.rows] for j in range(r.n)]
    new_cols: list[list[Fraction]] = []
    start = 0
    for size in r.blocks:
        while True:
            g = [[rng.randint(-entry_bound, entry_bound) for _ in range(size)] for _ in range(size)]
            if bareiss_rank(g) == size:
                break
        for k in range(size):
            new_cols.append([sum((cols[start + i][row] * g[i][k] for i in range(size)), Fraction(0))
                             for row in range(r.l)])
        start += size
    rows = tuple(tuple(new_cols[j][row] for j in range(r.n)) for row in range(r.l))
    return RealizationMatrix(r.blocks, rows)
