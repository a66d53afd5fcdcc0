"""Ground maps EE -> E, expansions and multisymmetric lifts.

EE is {0..n-1} with the fibers laid out consecutively: fiber i occupies
positions a_0 + ... + a_{i-1} up to (exclusive) a_0 + ... + a_i.  This
fixes the bitmask convention for every table on EE.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (GroundData, Polymatroid, PolymatroidError, elements_of,
                   is_flat, popcount, validate)


class TypeMismatchError(PolymatroidError):
    kind = "TypeMismatch"


class NotAFlatError(PolymatroidError):
    kind = "NotAFlat"


@dataclass(frozen=True)
class GroundMap:
    a: tuple[int, ...]
    fiber_masks: tuple[int, ...] = field(init=False)
    image: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if not a or any(x < 0 for x in a):
            raise ValueError(f"invalid type vector {a}")
        object.__setattr__(self, "a", a)
        masks, image, start = [], [], 0
        for i, size in enumerate(a):
            masks.append(((1 << size) - 1) << start)
            image.extend([i] * size)
            start += size
        object.__setattr__(self, "fiber_masks", tuple(masks))
        object.__setattr__(self, "image", tuple(image))

    @classmethod
    def identity(cls, n: int) -> "GroundMap":
        return cls((1,) * n)

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.image)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def fiber(self, i: int) -> list[int]:
        return elements_of(self.fiber_masks[i])

    def preimage(self, mask: int) -> int:
        out = 0
        for i in elements_of(mask):
            out |= self.fiber_masks[i]
        return out

    def project(self, mask: int) -> int:
        """pi(S) as a bitmask on E."""
        out = 0
        for j in elements_of(mask):
            out |= 1 << self.image[j]
        return out

    def push_point(self, x: Sequence[int]) -> tuple[int, ...]:
        """The linear map p_pi: R^EE -> R^E, e_j -> e_pi(j)."""
        out = [0] * self.m
        for j, v in enumerate(x):
            out[self.image[j]] += v
        return tuple(out)

    def is_saturated(self, mask: int) -> bool:
        return self.preimage(self.project(mask)) == mask

    def lifted_ground(self) -> GroundData:
        return GroundData((1,) * self.n)


def _check_type(p: Polymatroid, pi: GroundMap) -> None:
    if p.a != pi.a:
        raise TypeMismatchError(f"polymatroid has type {p.a}, ground map has type {pi.a}")


def expand(p: Polymatroid, pi: GroundMap) -> Polymatroid:
    """pi^*(P) with rank rk_P o pi, typed by (rk_P(pi(j)))_j."""
    _check_type(p, pi)
    table = [p.rank[pi.project(s)] for s in range(1 << pi.n)]
    ground = GroundData(tuple(p.rank[1 << pi.image[j]] for j in range(pi.n)))
    return validate(table, ground)


def msym_lift(p: Polymatroid, pi: GroundMap) -> Polymatroid:
    """The matroid on EE with rk(S) = min_A rk_P(A) + |S \\ pi^-1(A)|."""
    _check_type(p, pi)
    pre = [pi.preimage(a) for a in range(1 << p.m)]
    table = [min(p.rank[a] + popcount(s & ~pre[a]) for a in range(1 << p.m))
             for s in range(1 << pi.n)]
    return validate(table, pi.lifted_ground())


def geometric_flats(matroid: Polymatroid, pi: GroundMap) -> list[int]:
    """Flats of the lift that are unions of fibers."""
    return [f for f in range(1 << pi.n)
            if pi.is_saturated(f) and is_flat(matroid, f)]


def max_geometric_flat(matroid: Polymatroid, pi: GroundMap, f: int) -> int:
    if matroid.m != pi.n:
        raise TypeMismatchError("matroid ground set does not match the ground map")
    if not is_flat(matroid, f):
        raise NotAFlatError(f"subset {f} is not a flat", witness=(f,))
    contained = [g for g in geometric_flats(matroid, pi) if g & ~f == 0]
    top = [g for g in contained if not any(h != g and g & ~h == 0 for h in contained)]
    if len(top) != 1:
        raise AssertionError(f"flat {f} has {len(top)} maximal geometric flats")
    return top[0]


def permute_subset(s: int, perm: Sequence[int]) -> int:
    """Image of a subset of EE under a permutation given as a list."""
    out = 0
    for j in elements_of(s):
        out |= 1 << perm[j]
    return out
