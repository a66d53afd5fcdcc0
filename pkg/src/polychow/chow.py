"""Degrees, homology classes as pairing vectors, volume polynomials,
valuativity and dragon Hall-Rado degrees.

A class of dimension k is stored as its vector of degrees against every
degree-k monomial in the generators h_S (S a nonempty subset of E).  These
monomials span the Chow ring and the pairing is perfect, so two classes are
equal exactly when their vectors are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Sequence

from .arrangement import Hyperplane, face_representatives
from .core import (GroundData, Polymatroid, PolymatroidError, ValidationError,
                   _check_sequence, cap_element, dual, hall_rado, make_H,
                   meet, popcount, validate)
from .polytopes import base_points


class LengthMismatchError(PolymatroidError):
    kind = "LengthMismatch"


class DimensionUnderflowError(PolymatroidError):
    kind = "DimensionUnderflow"


class SplitOutOfRangeError(PolymatroidError):
    kind = "SplitOutOfRange"


class MixedTermsError(PolymatroidError):
    kind = "MixedTerms"


def _check_length(p: Polymatroid, seq: Sequence[int], want: int) -> None:
    if len(seq) != want:
        raise LengthMismatchError(
            f"sequence has length {len(seq)}, expected {want}", witness=(len(seq), want))


# ---------------------------------------------------------------------------
# degrees


def degree_hr(p: Polymatroid, seq: Sequence[int]) -> int:
    _check_length(p, seq, p.r)
    return int(hall_rado(p, seq))


def degree_cascade(p: Polymatroid, seq: Sequence[int]) -> int:
    """Intersect with H_{S_1}, H_{S_2}, ... and require the rank to drop by
    exactly one each time."""
    _check_length(p, seq, p.r)
    _check_sequence(p, seq)
    q = p
    for s in seq:
        nxt = meet(q, make_H(q.ground, s))
        if nxt.r != q.r - 1:
            return 0
        q = nxt
    return 1


# ---------------------------------------------------------------------------
# classes


@lru_cache(maxsize=None)
def monomials(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Degree-k h-monomials as sorted tuples of nonempty subset masks."""
    return tuple(combinations_with_replacement(range(1, 1 << m), k))


@lru_cache(maxsize=None)
def _monomial_index(m: int, k: int) -> dict[tuple[int, ...], int]:
    return {mono: idx for idx, mono in enumerate(monomials(m, k))}


@dataclass(frozen=True)
class ChowClass:
    ground: GroundData
    k: int
    values: tuple[int, ...]

    def pairing(self, monomial: Sequence[int]) -> int:
        key = tuple(sorted(monomial))
        return self.values[_monomial_index(self.ground.m, self.k)[key]]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(monomials(self.ground.m, self.k), self.values))


def bergman_class(p: Polymatroid) -> ChowClass:
    values = tuple(degree_hr(p, mono) for mono in monomials(p.m, p.r))
    return ChowClass(p.ground, p.r, values)


def multiply_by_h(xi: ChowClass, s: int) -> ChowClass:
    if xi.k == 0:
        raise DimensionUnderflowError("cannot cap a dimension-0 class")
    if s == 0:
        from .core import EmptySubsetError
        raise EmptySubsetError("h_S needs a nonempty S")
    values = tuple(xi.pairing(mono + (s,)) for mono in monomials(xi.ground.m, xi.k - 1))
    return ChowClass(xi.ground, xi.k - 1, values)


def zero_class(ground: GroundData, k: int) -> ChowClass:
    return ChowClass(ground, k, (0,) * len(monomials(ground.m, k)))


def class_combine(terms: Sequence[tuple[int, ChowClass]]) -> ChowClass:
    if not terms:
        raise MixedTermsError("class_combine needs at least one term")
    first = terms[0][1]
    total = [0] * len(first.values)
    for c, xi in terms:
        if (xi.ground, xi.k) != (first.ground, first.k):
            raise MixedTermsError(
                f"classes of dimension {first.k} and {xi.k} (types {first.ground.a}, {xi.ground.a})")
        for idx, v in enumerate(xi.values):
            total[idx] += c * v
    return ChowClass(first.ground, first.k, tuple(total))


def is_zero(xi: ChowClass) -> bool:
    return not any(xi.values)


# ---------------------------------------------------------------------------
# volume polynomials


@dataclass(frozen=True)
class VolumePoly:
    """Polynomial in t1..tm with exact rational coefficients, zero terms dropped."""

    m: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, m: int, coeffs: dict[tuple[int, ...], Fraction]) -> "VolumePoly":
        items = sorted(((e, Fraction(c)) for e, c in coeffs.items() if c != 0), reverse=True)
        return cls(m, tuple(items))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return dict(self.terms).get(tuple(exponent), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, c in self.terms:
            factors = []
            for i, e in enumerate(exponent):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e > 1:
                    factors.append(f"t{i + 1}^{e}")
            mag = abs(c)
            coeff = str(mag)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([coeff] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _inverse_factorial(u: Sequence[int]) -> Fraction:
    den = 1
    for x in u:
        den *= factorial(x)
    return Fraction(1, den)


def volume_polynomial(p: Polymatroid) -> VolumePoly:
    """(1/r!) deg_P((sum t_i h_{i})^r), expanded by multidegree."""
    coeffs = {}
    for u in _compositions(p.r, p.m):
        seq = [1 << i for i in range(p.m) for _ in range(u[i])]
        if degree_cascade(p, seq):
            coeffs[u] = _inverse_factorial(u)
    return VolumePoly.from_dict(p.m, coeffs)


def basis_egf(p: Polymatroid) -> VolumePoly:
    return VolumePoly.from_dict(p.m, {u: _inverse_factorial(u) for u in base_points(p)})


# ---------------------------------------------------------------------------
# valuativity


def hyperplane_split(p: Polymatroid, i: int, c: int) -> tuple[Polymatroid, Polymatroid, Polymatroid]:
    """Slice B(P) by x_i = c into B(Q_le), B(Q_ge) and their common face B(Q_eq)."""
    g = p.ground
    if not 0 <= i < g.m:
        from .core import UnknownElementError
        raise UnknownElementError(f"element {i} not in ground set of size {g.m}")
    bit = 1 << i
    lo, hi = p.r - p.rank[g.full & ~bit], p.rank[bit]
    if not lo <= c <= hi:
        raise SplitOutOfRangeError(
            f"split value {c} outside [{lo}, {hi}]", witness=(i, c, lo, hi))
    q_le = cap_element(p, i, c)
    q_ge = dual(cap_element(dual(p), i, g.a[i] - c))
    q_eq = validate([q_le.rank[s | bit] - (0 if s & bit else c) for s in range(1 << g.m)], g)
    for q in (q_le, q_ge, q_eq):
        if q.r != p.r:
            raise ValidationError(f"split piece has rank {q.r}, expected {p.r}")
    return q_le, q_ge, q_eq


def _check_terms(terms: Sequence[tuple[int, Polymatroid]]) -> Polymatroid:
    if not terms:
        raise MixedTermsError("need at least one term")
    first = terms[0][1]
    for _, q in terms:
        if q.ground != first.ground or q.r != first.r:
            raise MixedTermsError(
                f"terms mix type {first.a} rank {first.r} with type {q.a} rank {q.r}")
    return first


def in_base_polytope(p: Polymatroid, x: Sequence[Fraction]) -> bool:
    if sum(x) != p.r:
        return False
    for s in range(1, 1 << p.m):
        if sum(x[i] for i in range(p.m) if s >> i & 1) > p.rank[s]:
            return False
    return True


def indicator_combination_is_zero(terms: Sequence[tuple[int, Polymatroid]]) -> bool:
    """Decide sum c_j 1_{B(P_j)} == 0 on all of R^m by evaluating at one point
    per face of the arrangement of all rank hyperplanes x(S) = rk_j(S)."""
    first = _check_terms(terms)
    m, full = first.m, first.ground.full
    hyperplanes = []
    for _, q in terms:
        for s in range(1, full):
            normal = tuple(1 if s >> i & 1 else 0 for i in range(m))
            hyperplanes.append(Hyperplane(normal, Fraction(q.rank[s])))
    ambient = [Hyperplane((1,) * m, Fraction(first.r))]
    for x in face_representatives(hyperplanes, m, ambient):
        if sum(c * in_base_polytope(q, x) for c, q in terms) != 0:
            return False
    return True


def valuative_check(terms: Sequence[tuple[int, Polymatroid]]) -> tuple[bool, bool]:
    _check_terms(terms)
    lhs = is_zero(class_combine([(c, bergman_class(q)) for c, q in terms]))
    return lhs, indicator_combination_is_zero(terms)


def split_relation(p: Polymatroid, i: int, c: int) -> list[tuple[int, Polymatroid]]:
    q_le, q_ge, q_eq = hyperplane_split(p, i, c)
    return [(1, p), (-1, q_le), (-1, q_ge), (1, q_eq)]


def legal_splits(p: Polymatroid) -> list[tuple[int, int]]:
    full = p.ground.full
    return [(i, c) for i in range(p.m)
            for c in range(p.r - p.rank[full & ~(1 << i)], p.rank[1 << i] + 1)]


# ---------------------------------------------------------------------------
# dragon Hall-Rado


def dragon_degree(p: Polymatroid, seq: Sequence[int]) -> int:
    """-sum over nonempty S of (-1)^|S| deg_P(h_{S_1} ... h_{S_{r-1}} h_S)."""
    if p.r < 1:
        raise LengthMismatchError("dragon degree needs rank at least 1", witness=(len(seq), -1))
    _check_length(p, seq, p.r - 1)
    total = 0
    for s in range(1, 1 << p.m):
        total += (-1) ** popcount(s) * degree_hr(p, list(seq) + [s])
    return -total


def dragon_check(p: Polymatroid, seq: Sequence[int]) -> bool:
    """rk(union of S_j, j in J) >= |J| + 1 for every nonempty J."""
    if p.r < 1:
        raise LengthMismatchError("dragon condition needs rank at least 1", witness=(len(seq), -1))
    _check_length(p, seq, p.r - 1)
    _check_sequence(p, seq)
    for size in range(1, len(seq) + 1):
        for js in combinations(range(len(seq)), size):
            u = 0
            for j in js:
                u |= seq[j]
            if p.rank[u] < size + 1:
                return False
    return True
