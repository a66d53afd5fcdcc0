"""One relatively interior rational point per face of an affine hyperplane
arrangement, computed exactly.

Every face of an arrangement is a chamber of the arrangement induced on some
flat (intersection of hyperplanes).  Flats are processed by increasing
dimension.  A 0-dimensional flat is its own representative.  On a flat L of
dimension d >= 1, every chamber has a facet lying in a (d-1)-flat L' of L,
so the chambers of L are reached by pushing each chamber representative g of
each L' off L' in both directions by a step small enough that no other
hyperplane is crossed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import dot, nullspace, solve

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[int, ...]
    offset: Fraction

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def sign(self, x: Sequence[Fraction]) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)


@dataclass
class _Flat:
    contained: frozenset[int]  # indices of arrangement hyperplanes containing it
    point: Vector
    directions: list[Vector]

    @property
    def dim(self) -> int:
        return len(self.directions)


def _make_flat(hyperplanes: Sequence[Hyperplane], ambient: Sequence[Hyperplane],
               chosen: Sequence[int], n: int) -> _Flat | None:
    eqs = list(ambient) + [hyperplanes[k] for k in chosen]
    rows = [list(h.normal) for h in eqs]
    point = solve(rows, [h.offset for h in eqs], n)
    if point is None:
        return None
    directions = [tuple(v) for v in nullspace(rows, n)]
    contained = frozenset(
        k for k, h in enumerate(hyperplanes)
        if h.value(point) == 0 and all(dot(h.normal, d) == 0 for d in directions))
    return _Flat(contained, tuple(point), directions)


def face_representatives(hyperplanes: Sequence[Hyperplane], n: int,
                         ambient: Sequence[Hyperplane] = ()) -> list[Vector]:
    """Representatives of all faces of `hyperplanes` restricted to the affine
    space cut out by `ambient`, deduplicated by sign vector."""
    hyperplanes = list(dict.fromkeys(hyperplanes))
    root = _make_flat(hyperplanes, ambient, [], n)
    if root is None:
        return []
    flats = {root.contained: root}
    frontier = [root]
    children: dict[frozenset[int], list[frozenset[int]]] = {}
    while frontier:
        nxt = []
        for flat in frontier:
            kids = children.setdefault(flat.contained, [])
            for k in range(len(hyperplanes)):
                if k in flat.contained:
                    continue
                sub = _make_flat(hyperplanes, ambient, sorted(flat.contained | {k}), n)
                if sub is None:
                    continue
                if sub.contained not in kids:
                    kids.append(sub.contained)
                if sub.contained not in flats:
                    flats[sub.contained] = sub
                    nxt.append(sub)
        frontier = nxt

    chambers: dict[frozenset[int], list[Vector]] = {}
    for key in sorted(flats, key=lambda c: flats[c].dim):
        flat = flats[key]
        kids = children.get(key, [])
        if not kids:
            chambers[key] = [flat.point]
            continue
        found: dict[tuple[int, ...], Vector] = {}
        for kid in kids:
            # one hyperplane containing the child flat but not this flat
            cut = hyperplanes[min(kid - key)]
            step = next(d for d in flat.directions if dot(cut.normal, d) != 0)
            for g in chambers[kid]:
                hits = []
                for h in hyperplanes:
                    rate = dot(h.normal, step)
                    if rate != 0 and h.value(g) != 0:
                        hits.append(abs(h.value(g) / rate))
                eps = min(hits) / 2 if hits else Fraction(1)
                for sgn in (1, -1):
                    x = tuple(gi + sgn * eps * si for gi, si in zip(g, step))
                    found.setdefault(tuple(h.sign(x) for h in hyperplanes), x)
        chambers[key] = list(found.values())

    reps: dict[tuple[int, ...], Vector] = {}
    for key in sorted(chambers, key=lambda c: flats[c].dim):
        for x in chambers[key]:
            reps.setdefault(tuple(h.sign(x) for h in hyperplanes), x)
    return list(reps.values())
