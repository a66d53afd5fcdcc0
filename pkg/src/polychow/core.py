"""Polymatroid kernel.

A polymatroid on E = {0, ..., m-1} is stored as a dense rank table indexed
by subset bitmask (bit i set <=> element i in the subset).  Construction
always goes through :func:`validate`, so every :class:`Polymatroid` value
satisfies normalization, monotonicity, submodularity and the type bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_M = 12


# ---------------------------------------------------------------------------
# bitmask helpers


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        mask |= 1 << i
    return mask


def submasks(mask: int) -> Iterator[int]:
    """All submasks of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------------------------------------------------------------------------
# errors


class PolymatroidError(Exception):
    """Base class for domain errors raised by this package."""

    kind = "PolymatroidError"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(PolymatroidError):
    kind = "Validation"


class ShapeError(ValidationError):
    kind = "Shape"


class NegativeRankError(ValidationError):
    kind = "NegativeRank"


class NormalizationError(ValidationError):
    kind = "Normalization"


class MonotonicityError(ValidationError):
    kind = "Monotonicity"


class SubmodularityError(ValidationError):
    kind = "Submodularity"


class TypeBoundError(ValidationError):
    kind = "Type"


class GroundMismatchError(PolymatroidError):
    kind = "GroundMismatch"


class UnknownElementError(PolymatroidError):
    kind = "UnknownElement"


class EmptySubsetError(PolymatroidError):
    kind = "EmptySubset"


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class GroundData:
    """Ground set E = {0..m-1} together with the type vector a."""

    a: tuple[int, ...]
    n: int = field(init=False)

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if len(a) < 1:
            raise ValidationError("ground set must have at least one element")
        if any(x < 0 for x in a):
            raise ValidationError(f"type vector must be nonnegative, got {a}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "n", sum(a))

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    def weight(self, mask: int) -> int:
        """Sum of a_i over i in mask."""
        return sum(self.a[i] for i in elements_of(mask))


@dataclass(frozen=True)
class Polymatroid:
    """A validated rank table.  Do not construct directly; use :func:`validate`."""

    ground: GroundData
    rank: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.ground.m

    @property
    def a(self) -> tuple[int, ...]:
        return self.ground.a

    @property
    def r(self) -> int:
        return self.rank[-1]

    def __call__(self, mask: int) -> int:
        return self.rank[mask]

    def is_matroid(self) -> bool:
        return all(self.rank[1 << i] <= 1 for i in range(self.m))


def _check_ground(ground: GroundData | Sequence[int]) -> GroundData:
    if isinstance(ground, GroundData):
        return ground
    return GroundData(tuple(ground))


def validate(table: Sequence[int], ground: GroundData | Sequence[int],
             max_m: int = DEFAULT_MAX_M) -> Polymatroid:
    """Check the four polymatroid axioms and return an immutable value.

    Raises the axiom-specific subclass of :class:`ValidationError`; the
    ``witness`` attribute holds the offending subset(s) as bitmasks.
    """
    ground = _check_ground(ground)
    m = ground.m
    if m > max_m:
        raise ShapeError(f"m = {m} exceeds the configured cap {max_m}")
    if len(table) != 1 << m:
        raise ShapeError(f"rank table needs {1 << m} entries, got {len(table)}")
    rank = []
    for v in table:
        if isinstance(v, bool) or int(v) != v:
            raise ShapeError(f"rank entries must be integers, got {v!r}")
        rank.append(int(v))
    if rank[0] != 0:
        raise NormalizationError("rk(empty set) must be 0", witness=(0,))
    for s, v in enumerate(rank):
        if v < 0:
            raise NegativeRankError(f"negative rank {v} at subset {s}", witness=(s,))
    full = (1 << m) - 1
    for s in range(1 << m):
        for i in range(m):
            bit = 1 << i
            if not s & bit and rank[s] > rank[s | bit]:
                raise MonotonicityError(
                    f"rk({s}) > rk({s | bit})", witness=(s, s | bit))
    # the local exchange form is equivalent to full submodularity
    for s in range(1 << m):
        rest = full & ~s
        for i in elements_of(rest):
            for j in elements_of(rest):
                if j <= i:
                    continue
                si, sj = s | (1 << i), s | (1 << j)
                if rank[si] + rank[sj] < rank[s] + rank[si | sj]:
                    raise SubmodularityError(
                        f"rk({si}) + rk({sj}) < rk({s}) + rk({si | sj})",
                        witness=(si, sj))
    for i in range(m):
        if rank[1 << i] > ground.a[i]:
            raise TypeBoundError(
                f"rk({{{i}}}) = {rank[1 << i]} exceeds a_{i} = {ground.a[i]}",
                witness=(1 << i,))
    return Polymatroid(ground, tuple(rank))


def _same_ground(p1: Polymatroid, p2: Polymatroid) -> GroundData:
    if p1.ground != p2.ground:
        raise GroundMismatchError(
            f"ground data differ: {p1.ground.a} vs {p2.ground.a}")
    return p1.ground


# ---------------------------------------------------------------------------
# canonical constructors


def make_boolean(ground: GroundData | Sequence[int]) -> Polymatroid:
    ground = _check_ground(ground)
    return validate([ground.weight(s) for s in range(1 << ground.m)], ground)


def make_zero(ground: GroundData | Sequence[int]) -> Polymatroid:
    ground = _check_ground(ground)
    return validate([0] * (1 << ground.m), ground)


def make_H(ground: GroundData | Sequence[int], subset: int) -> Polymatroid:
    """H_S: the polymatroid whose dual has the simplex conv(0, e_i : i in S)
    as its independence polytope.  Its Bergman class is the generator h_S."""
    ground = _check_ground(ground)
    if subset == 0:
        raise EmptySubsetError("H_S needs a nonempty subset S")
    if subset & ~ground.full:
        raise UnknownElementError(f"subset {subset} is not contained in E")
    simplex = validate([1 if t & subset else 0 for t in range(1 << ground.m)], ground)
    return dual(simplex)


# ---------------------------------------------------------------------------
# operations


def dual(p: Polymatroid) -> Polymatroid:
    g = p.ground
    full, r = g.full, p.r
    table = [g.weight(s) + p.rank[full & ~s] - r for s in range(1 << g.m)]
    return validate(table, g)


def _box_truncate(values: Sequence[int], caps: Sequence[int], m: int) -> list[int]:
    # rk'(S) = min_{T subset S} values(T) + caps(S \ T)
    cap_sum = [0] * (1 << m)
    for s in range(1, 1 << m):
        low = s & -s
        cap_sum[s] = cap_sum[s ^ low] + caps[low.bit_length() - 1]
    out = []
    for s in range(1 << m):
        out.append(min(values[t] + cap_sum[s & ~t] for t in submasks(s)))
    return out


def union(p1: Polymatroid, p2: Polymatroid) -> Polymatroid:
    """Polymatroid union: independence polytope (I1 + I2) cut by the type box."""
    g = _same_ground(p1, p2)
    summed = [x + y for x, y in zip(p1.rank, p2.rank)]
    return validate(_box_truncate(summed, g.a, g.m), g)


def meet(p1: Polymatroid, p2: Polymatroid) -> Polymatroid:
    """Polymatroid intersection, the dual of the union of the duals."""
    _same_ground(p1, p2)
    return dual(union(dual(p1), dual(p2)))


def cap_element(p: Polymatroid, i: int, c: int) -> Polymatroid:
    """Truncate I(P) by the half-space x_i <= c."""
    g = p.ground
    if not 0 <= i < g.m:
        raise UnknownElementError(f"element {i} not in ground set of size {g.m}")
    if c < 0:
        raise ValueError(f"cap must be nonnegative, got {c}")
    caps = list(g.a)
    caps[i] = min(c, g.a[i])
    return validate(_box_truncate(p.rank, caps, g.m), g)


def is_flat(p: Polymatroid, f: int) -> bool:
    full = p.ground.full
    return all(p.rank[f | (1 << e)] > p.rank[f] for e in elements_of(full & ~f))


def flats(p: Polymatroid) -> tuple[list[int], int]:
    """All flats in increasing bitmask order, and the loop set (minimal flat)."""
    fl = [f for f in range(1 << p.m) if is_flat(p, f)]
    # the closure of the empty set is the intersection of all flats
    loops = p.ground.full
    for f in fl:
        loops &= f
    return fl, loops


def closure(p: Polymatroid, s: int) -> int:
    full = p.ground.full
    out = s
    for e in elements_of(full & ~s):
        if p.rank[s | (1 << e)] == p.rank[s]:
            out |= 1 << e
    return out


def is_loopless(p: Polymatroid) -> bool:
    return is_flat(p, 0)


def _check_sequence(p: Polymatroid, seq: Sequence[int]) -> None:
    for s in seq:
        if s == 0:
            raise EmptySubsetError("sequence contains an empty set")
        if s & ~p.ground.full:
            raise UnknownElementError(f"subset {s} is not contained in E")


def hall_rado(p: Polymatroid, seq: Sequence[int]) -> bool:
    """True iff rk(union of S_j, j in J) >= |J| for every J.

    Checked in the equivalent form rk(U) >= #{j : S_j subset U} for all U.
    """
    _check_sequence(p, seq)
    for u in range(1 << p.m):
        inside = sum(1 for s in seq if s & ~u == 0)
        if inside > p.rank[u]:
            return False
    return True


def in_independence_polytope(p: Polymatroid, x: Sequence[int]) -> bool:
    if any(v < 0 for v in x):
        return False
    sums = [0] * (1 << p.m)
    for s in range(1, 1 << p.m):
        low = s & -s
        sums[s] = sums[s ^ low] + x[low.bit_length() - 1]
        if sums[s] > p.rank[s]:
            return False
    return True


def rado_matching(p: Polymatroid, seq: Sequence[int]) -> tuple[int, ...] | None:
    """Lexicographically smallest f with f(j) in S_j and sum e_f(j) in I(P).

    Depth-first search over positions; I(P) is down-closed so a partial
    point outside it is a dead end.  Failed (position, point) states are
    memoised, which bounds the work by k times the number of lattice points.
    """
    _check_sequence(p, seq)
    choices = [elements_of(s) for s in seq]
    dead: set[tuple[int, tuple[int, ...]]] = set()
    point = [0] * p.m
    assignment: list[int] = []

    def search(j: int) -> bool:
        if j == len(seq):
            return True
        key = (j, tuple(point))
        if key in dead:
            return False
        for e in choices[j]:
            point[e] += 1
            if in_independence_polytope(p, point):
                assignment.append(e)
                if search(j + 1):
                    return True
                assignment.pop()
            point[e] -= 1
        dead.add(key)
        return False

    return tuple(assignment) if search(0) else None


def enumerate_polymatroids(ground: GroundData | Sequence[int]) -> list[Polymatroid]:
    """Every valid rank table of the given type, by backtracking over subsets
    in increasing bitmask order with the local submodularity bounds."""
    ground = _check_ground(ground)
    m = ground.m
    size = 1 << m
    table = [0] * size
    found = []

    def bounds(s: int) -> tuple[int, int]:
        members = elements_of(s)
        lo = max(table[s ^ (1 << i)] for i in members)
        hi = min(table[s ^ (1 << i)] + table[1 << i] for i in members)
        if len(members) == 1:
            hi = ground.a[members[0]]
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                bi, bj = 1 << members[x], 1 << members[y]
                hi = min(hi, table[s ^ bi] + table[s ^ bj] - table[s ^ bi ^ bj])
        return lo, hi

    def fill(s: int) -> None:
        if s == size:
            found.append(validate(table, ground))
            return
        lo, hi = bounds(s)
        for v in range(lo, hi + 1):
            table[s] = v
            fill(s + 1)
        table[s] = 0

    fill(1)
    return found
