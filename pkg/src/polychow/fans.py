"""Polystellahedral fans, augmented Bergman fans, stars, balancing and
f-polynomials.

Fans are stored as sets of cone labels (I, chain) with integer weights.
I is a bitmask on EE; chain is a strictly increasing tuple of proper
subsets of E (bitmasks).  Ray vectors are derived on demand:
e_j for j in I and -e_{EE minus pi^-1(F)} for F in the chain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .core import (Polymatroid, PolymatroidError, elements_of, flats,
                   is_loopless, make_boolean, popcount, submasks)
from .lift import GroundMap, TypeMismatchError, msym_lift
from .linalg import in_span


class NonPureFanError(PolymatroidError):
    kind = "NonPureFan"


class LoopyPolymatroidError(PolymatroidError):
    kind = "LoopyPolymatroid"


@dataclass(frozen=True, order=True)
class ConeLabel:
    I: int
    chain: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return popcount(self.I) + len(self.chain)

    def contains(self, other: "ConeLabel") -> bool:
        return other.I & ~self.I == 0 and set(other.chain) <= set(self.chain)

    def facets(self) -> Iterable[tuple["ConeLabel", tuple[str, int]]]:
        """(facet, removed ray) pairs; rays are ("e", j) or ("F", mask)."""
        for j in elements_of(self.I):
            yield ConeLabel(self.I & ~(1 << j), self.chain), ("e", j)
        for k, f in enumerate(self.chain):
            yield ConeLabel(self.I, self.chain[:k] + self.chain[k + 1:]), ("F", f)


@dataclass(frozen=True)
class WeightedFan:
    """A simplicial fan in R^EE (or in R^EE / R e_EE when ``quotient``)."""

    pi: GroundMap
    weights: Mapping[ConeLabel, int] = field(compare=False)
    quotient: bool = False
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        items = tuple(sorted(self.weights.items(), key=lambda kv: (kv[0].dim, kv[0])))
        object.__setattr__(self, "weights", dict(items))
        object.__setattr__(self, "_key", items)

    def __eq__(self, other):
        if not isinstance(other, WeightedFan):
            return NotImplemented
        return (self.pi, self.quotient, self._key) == (other.pi, other.quotient, other._key)

    def __hash__(self):
        return hash((self.pi, self.quotient, self._key))

    @property
    def cones(self) -> list[ConeLabel]:
        return list(self.weights)

    @property
    def n(self) -> int:
        return self.pi.n

    def ray_vector(self, ray: tuple[str, int]) -> list[int]:
        kind, idx = ray
        if kind == "e":
            return [1 if j == idx else 0 for j in range(self.n)]
        outside = self.pi.full & ~self.pi.preimage(idx)
        return [-1 if outside >> j & 1 else 0 for j in range(self.n)]

    def rays_of(self, label: ConeLabel) -> list[list[int]]:
        rays = [self.ray_vector(("e", j)) for j in elements_of(label.I)]
        rays += [self.ray_vector(("F", f)) for f in label.chain]
        return rays

    def lineality(self) -> list[list[int]]:
        return [[1] * self.n] if self.quotient else []

    def dimension(self) -> int:
        return max((c.dim for c in self.weights), default=-1)

    def maximal_cones(self) -> list[ConeLabel]:
        covered = set()
        for c in self.weights:
            for facet, _ in c.facets():
                covered.add(facet)
        return [c for c in self.weights if c not in covered]

    def is_pure(self) -> bool:
        d = self.dimension()
        return all(c.dim == d for c in self.maximal_cones())

    def without(self, labels: Iterable[ConeLabel]) -> "WeightedFan":
        drop = set(labels)
        return WeightedFan(self.pi, {c: w for c, w in self.weights.items() if c not in drop},
                           self.quotient)


def _require_positive_type(pi: GroundMap) -> None:
    if any(x == 0 for x in pi.a):
        raise ValueError(f"fans need a positive type vector, got {pi.a}")


def _chains(elements: Sequence[int]) -> list[tuple[int, ...]]:
    """All strictly increasing chains drawn from `elements` (bitmasks)."""
    elements = sorted(elements, key=lambda s: (popcount(s), s))
    out: list[tuple[int, ...]] = [()]

    def extend(chain: tuple[int, ...], start: int) -> None:
        for k in range(start, len(elements)):
            f = elements[k]
            if chain and not (chain[-1] & ~f == 0 and chain[-1] != f):
                continue
            out.append(chain + (f,))
            extend(chain + (f,), k + 1)

    extend((), 0)
    return out


def is_compatible(pi: GroundMap, label: ConeLabel) -> bool:
    first = label.chain[0] if label.chain else (1 << pi.m) - 1
    for i in range(pi.m):
        if pi.fiber_masks[i] & ~label.I == 0 and not first >> i & 1:
            return False
    return True


def polystell_fan(pi: GroundMap, up_to_dim: int | None = None) -> WeightedFan:
    """All compatible pairs I <= F, optionally only those of dim <= up_to_dim."""
    _require_positive_type(pi)
    full_e = (1 << pi.m) - 1
    cones = {}
    for chain in _chains(range(full_e)):
        first = chain[0] if chain else full_e
        options = []
        for i in range(pi.m):
            fib = pi.fiber_masks[i]
            subs = list(submasks(fib))
            if not first >> i & 1:
                subs.remove(fib)
            options.append(subs)
        for pick in product(*options):
            I = 0
            for s in pick:
                I |= s
            label = ConeLabel(I, chain)
            if up_to_dim is None or label.dim <= up_to_dim:
                cones[label] = 1
    return WeightedFan(pi, cones)


def _bergman_condition_one(p: Polymatroid, pi: GroundMap, s: int) -> bool:
    return all(p.rank[pi.project(t)] >= popcount(t) for t in submasks(s))


def _bergman_condition_two(p: Polymatroid, pi: GroundMap, s: int, f: int) -> bool:
    rest = s & ~pi.preimage(f)
    return all(p.rank[f | pi.project(t)] > p.rank[f] + popcount(t)
               for t in submasks(rest) if t)


def aug_bergman_fan(p: Polymatroid, pi: GroundMap) -> WeightedFan:
    """Cones S <= F with F a chain of proper flats satisfying

    (1) rk(pi(T)) >= |T| for all T subset S, and
    (2) rk(F u pi(T)) > rk(F) + |T| for all F in the chain and all
        nonempty T subset S minus pi^-1(F).
    """
    if p.a != pi.a:
        raise TypeMismatchError(f"polymatroid has type {p.a}, ground map has type {pi.a}")
    _require_positive_type(pi)
    full_e = p.ground.full
    proper_flats = [f for f in flats(p)[0] if f != full_e]
    independent = [s for s in range(1 << pi.n) if _bergman_condition_one(p, pi, s)]
    cones = {}
    for chain in _chains(proper_flats):
        for s in independent:
            if all(_bergman_condition_two(p, pi, s, f) for f in chain):
                cones[ConeLabel(s, chain)] = 1
    return WeightedFan(pi, cones)


def balancing_failure(fan: WeightedFan) -> ConeLabel | None:
    """First codimension-one cone at which the weighted ray sum leaves its span."""
    if not fan.weights:
        return None
    if not fan.is_pure():
        raise NonPureFanError("balancing needs a pure-dimensional fan")
    d = fan.dimension()
    if d == 0:
        return None
    sums: dict[ConeLabel, list[int]] = {}
    for sigma, w in fan.weights.items():
        if sigma.dim != d:
            continue
        for tau, ray in sigma.facets():
            vec = fan.ray_vector(ray)
            acc = sums.setdefault(tau, [0] * fan.n)
            for j in range(fan.n):
                acc[j] += w * vec[j]
    for tau in sorted(sums, key=lambda c: (c.dim, c)):
        if not in_span(fan.rays_of(tau) + fan.lineality(), sums[tau]):
            return tau
    return None


def is_balanced(fan: WeightedFan) -> bool:
    return balancing_failure(fan) is None


def star_empty(fan: WeightedFan, p: Polymatroid) -> WeightedFan:
    """Star at the ray rho_empty, in the quotient R^EE / R e_EE."""
    if not is_loopless(p):
        raise LoopyPolymatroidError("the star at rho_empty needs a loopless polymatroid",
                                    witness=(flats(p)[1],))
    if fan.quotient:
        raise ValueError("fan is already a star")
    cones = {ConeLabel(c.I, c.chain[1:]): w for c, w in fan.weights.items()
             if c.chain and c.chain[0] == 0}
    return WeightedFan(fan.pi, cones, quotient=True)


def polypermutohedral_fan(pi: GroundMap) -> WeightedFan:
    return star_empty(polystell_fan(pi), make_boolean(pi.a))


# ---------------------------------------------------------------------------
# f-polynomials


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    out = [0] * max(len(p), len(q))
    for i, v in enumerate(p):
        out[i] += v
    for i, v in enumerate(q):
        out[i] += v
    return _trim(out)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        for j, v in enumerate(q):
            out[i + j] += u * v
    return _trim(out)


def one_plus_t_power(k: int) -> tuple[int, ...]:
    return tuple(comb(k, i) for i in range(k + 1))


def f_polynomial(fan: WeightedFan) -> tuple[int, ...]:
    """Coefficient k counts the k-dimensional cones; the empty fan gives ()."""
    counts = [0] * (fan.dimension() + 1)
    for c in fan.weights:
        counts[c.dim] += 1
    return _trim(counts)


def hpoly_identity_sides(pi: GroundMap) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Both sides of
        f(Sigma_a) = (1+t)^n + sum_{J proper} t (1+t)^{|pi^-1 J|} f(star fan of a minus J).
    The sum runs over proper J (including the empty set), which is the range
    the cone bijection actually produces."""
    lhs = f_polynomial(polystell_fan(pi))
    rhs = one_plus_t_power(pi.n)
    for j in range((1 << pi.m) - 1):
        rest = tuple(pi.a[i] for i in range(pi.m) if not j >> i & 1)
        sub = f_polynomial(polypermutohedral_fan(GroundMap(rest)))
        size = popcount(pi.preimage(j))
        rhs = poly_add(rhs, poly_mul((0, 1), poly_mul(one_plus_t_power(size), sub)))
    return lhs, rhs


def hpoly_identity_check(pi: GroundMap) -> bool:
    lhs, rhs = hpoly_identity_sides(pi)
    return lhs == rhs


# ---------------------------------------------------------------------------
# supports


def cone_contains(pi: GroundMap, label: ConeLabel, x: Sequence[int]) -> bool:
    """Is x a nonnegative combination of the rays of sigma_{I <= F}?

    The ray matrix is triangular along the chain: coordinates in pi^-1(F_1)
    only see the e_j, and on each layer pi^-1(F_{t+1} minus F_t) the
    coordinates outside I all equal minus the partial sum mu_1 + ... + mu_t.
    """
    chain = label.chain
    full_e = (1 << pi.m) - 1
    bottom = pi.preimage(chain[0] if chain else full_e)
    for j in elements_of(bottom):
        if label.I >> j & 1:
            if x[j] < 0:
                return False
        elif x[j] != 0:
            return False
    level = 0
    for t, f in enumerate(chain):
        upper = chain[t + 1] if t + 1 < len(chain) else full_e
        layer = pi.preimage(upper & ~f)
        free = [j for j in elements_of(layer) if not label.I >> j & 1]
        if not free:
            raise ValueError(f"layer {t} of {label} has no coordinate outside I")
        value = -x[free[0]]
        if any(-x[j] != value for j in free) or value < level:
            return False
        if any(x[j] + value < 0 for j in elements_of(layer & label.I)):
            return False
        level = value
    return True


def in_support(fan: WeightedFan, x: Sequence[int], maximal: Sequence[ConeLabel] | None = None) -> bool:
    cones = fan.maximal_cones() if maximal is None else maximal
    return any(cone_contains(fan.pi, c, x) for c in cones)


def _clear_denominators(x: Sequence[Fraction]) -> list[int]:
    den = lcm(*(v.denominator for v in x))
    return [int(v * den) for v in x]


def _random_point(rng: random.Random, fan: WeightedFan | None, n: int, bound: int) -> list[Fraction]:
    if fan is None or not fan.weights:
        den = rng.randint(1, 6)
        return [Fraction(rng.randint(-bound * den, bound * den), den) for _ in range(n)]
    cone = rng.choice(fan.cones)
    x = [Fraction(0)] * n
    for ray in fan.rays_of(cone):
        coeff = Fraction(rng.randint(1, 4 * bound), rng.randint(1, 4))
        for j in range(n):
            x[j] += coeff * ray[j]
    return x


def supports_agree(fan_a: WeightedFan, fan_b: WeightedFan, trials: int,
                   rng: random.Random, bound: int = 3) -> bool:
    """Sample rational points and compare support membership.

    Each trial draws from one of three sources: a uniform point of the box
    [-bound, bound]^n, a random positive combination of the rays of a random
    cone of fan_a, or the same for fan_b.  Cone-sourced points are what make
    a disagreement between lower-dimensional supports detectable.
    """
    if fan_a.n != fan_b.n:
        raise ValueError("fans live in different ambient spaces")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    max_a, max_b = fan_a.maximal_cones(), fan_b.maximal_cones()
    for _ in range(trials):
        source = rng.randrange(3)
        fan = (None, fan_a, fan_b)[source]
        x = _clear_denominators(_random_point(rng, fan, fan_a.n, bound))
        if in_support(fan_a, x, max_a) != in_support(fan_b, x, max_b):
            return False
    return True


def support_equality_sample(p: Polymatroid, pi: GroundMap, trials: int, seed: int) -> bool:
    """Compare |Sigma_P| with the support of the augmented Bergman fan of the lift."""
    rng = random.Random(seed)
    fan_p = aug_bergman_fan(p, pi)
    lift = msym_lift(p, pi)
    fan_m = aug_bergman_fan(lift, GroundMap.identity(pi.n))
    return supports_agree(fan_p, fan_m, trials, rng)


# ---------------------------------------------------------------------------
# serialization


def fan_to_json(fan: WeightedFan, names: Sequence[str] | None = None,
                ee_names: Sequence[str] | None = None) -> list[dict]:
    """Cones in (dimension, label) order as {"I", "chain", "weight"} objects."""
    names = names or [str(i + 1) for i in range(fan.pi.m)]
    ee_names = ee_names or list(range(fan.n))
    return [{"I": [ee_names[j] for j in elements_of(c.I)],
             "chain": [[names[i] for i in elements_of(f)] for f in c.chain],
             "weight": w}
            for c, w in fan.weights.items()]
