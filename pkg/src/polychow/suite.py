"""The acceptance battery: twelve exact checks over exhaustive and seeded
random instance sets.  Used by `polychow suite` and by the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import chow, core, fans, golden, lift, polytopes, realization

ENUMERATED_TYPES = ((2, 1), (2, 2))
RANDOM_TYPE = (2, 1, 1)
RANDOM_COUNT = 200


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"id": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail}

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


@lru_cache(maxsize=None)
def enumerated() -> tuple[core.Polymatroid, ...]:
    out = []
    for a in ENUMERATED_TYPES:
        out.extend(core.enumerate_polymatroids(a))
    return tuple(out)


@lru_cache(maxsize=None)
def random_instances(seed: int, count: int = RANDOM_COUNT) -> tuple[core.Polymatroid, ...]:
    pool = core.enumerate_polymatroids(RANDOM_TYPE)
    rng = random.Random(seed)
    return tuple(rng.choice(pool) for _ in range(count))


def all_sequences(p: core.Polymatroid, length: int):
    return product(range(1, 1 << p.m), repeat=length)


def criterion_hr_cascade(seed: int, trials: int) -> tuple[bool, str]:
    checked = 0
    for p in enumerated():
        for seq in all_sequences(p, p.r):
            if chow.degree_hr(p, seq) != chow.degree_cascade(p, seq):
                return False, f"mismatch at rank table {p.rank}, sequence {seq}"
            checked += 1
    return True, f"{checked} (P, sequence) pairs agree"


def criterion_volume_egf(seed: int, trials: int) -> tuple[bool, str]:
    instances = enumerated() + random_instances(seed)
    for p in instances:
        if chow.volume_polynomial(p) != chow.basis_egf(p):
            return False, f"volume polynomial differs from basis EGF for {p.a} {p.rank}"
    return True, f"{len(instances)} polymatroids"


def criterion_rado(seed: int, trials: int) -> tuple[bool, str]:
    checked = 0
    rng = random.Random(seed)
    cases = [(p, seq) for p in enumerated()
             for length in range(p.r + 2) for seq in all_sequences(p, length)]
    for p in random_instances(seed):
        for _ in range(5):
            cases.append((p, tuple(rng.randrange(1, 1 << p.m) for _ in range(rng.randint(0, p.r + 1)))))
    for p, seq in cases:
        f = core.rado_matching(p, seq)
        if (f is not None) != core.hall_rado(p, seq):
            return False, f"rado_matching and hall_rado disagree at {p.rank}, {seq}"
        if f is not None:
            point = [0] * p.m
            for j, e in enumerate(f):
                if not seq[j] >> e & 1:
                    return False, f"matching {f} leaves S_{j} at {p.rank}, {seq}"
                point[e] += 1
            if not core.in_independence_polytope(p, point):
                return False, f"matching {f} lands outside I(P) at {p.rank}"
        checked += 1
    return True, f"{checked} (P, sequence) pairs"


def _lift_identities(p: core.Polymatroid) -> str | None:
    pi = lift.GroundMap(p.a)
    m_lift = lift.msym_lift(p, pi)
    expected = [x for x in product((0, 1), repeat=pi.n)
                if core.in_independence_polytope(p, pi.push_point(x))]
    if polytopes.independence_points(m_lift) != expected:
        return "projection lemma fails"
    if lift.msym_lift(core.dual(p), pi) != core.dual(m_lift):
        return "lift does not commute with duality"
    return None


def criterion_lift(seed: int, trials: int) -> tuple[bool, str]:
    instances = enumerated() + random_instances(seed)
    for p in instances:
        problem = _lift_identities(p)
        if problem:
            return False, f"{problem} for {p.a} {p.rank}"
    return True, f"{len(instances)} polymatroids"


def criterion_fans(seed: int, trials: int) -> tuple[bool, str]:
    for k, p in enumerate(enumerated()):
        pi = lift.GroundMap(p.a)
        fan = fans.aug_bergman_fan(p, pi)
        if not fan.is_pure() or fan.dimension() != p.r:
            return False, f"fan of {p.rank} is not pure of dimension {p.r}"
        if not fans.is_balanced(fan):
            return False, f"fan of {p.rank} is not balanced"
        if not fans.support_equality_sample(p, pi, trials, seed + k):
            return False, f"support mismatch for {p.rank}"
    return True, f"{len(enumerated())} fans, {trials} support samples each"


HPOLY_TYPES = ((1,), (2,), (1, 1), (2, 1))


def criterion_hpoly(seed: int, trials: int) -> tuple[bool, str]:
    for a in HPOLY_TYPES:
        lhs, rhs = fans.hpoly_identity_sides(lift.GroundMap(a))
        if lhs != rhs:
            return False, f"type {a}: {lhs} != {rhs}"
    return True, f"types {', '.join(str(a) for a in HPOLY_TYPES)}"


def criterion_dragon(seed: int, trials: int) -> tuple[bool, str]:
    checked = 0
    for p in enumerated():
        if not core.is_loopless(p) or p.r < 1:
            continue
        for seq in all_sequences(p, p.r - 1):
            if chow.dragon_degree(p, seq) != int(chow.dragon_check(p, seq)):
                return False, f"dragon degree differs from the condition at {p.rank}, {seq}"
            checked += 1
    return True, f"{checked} (P, sequence) pairs"


def random_relation(rng: random.Random, pool) -> list[tuple[int, core.Polymatroid]]:
    """Compose one to three hyperplane splits with random coefficients; half
    the time perturb the result so that it is (usually) not a relation."""
    splittable = [p for p in pool if chow.legal_splits(p)]
    p = rng.choice(splittable)
    pieces = [p]
    terms: list[tuple[int, core.Polymatroid]] = []
    for _ in range(rng.randint(1, 3)):
        base = rng.choice(pieces)
        i, c = rng.choice(chow.legal_splits(base))
        coeff = rng.choice((-2, -1, 1, 2))
        rel = chow.split_relation(base, i, c)
        terms.extend((coeff * s, q) for s, q in rel)
        pieces.extend(q for _, q in rel[1:])
    if rng.random() < 0.5:
        peers = [q for q in pool if q.ground == p.ground and q.r == p.r]
        if rng.random() < 0.5 and len(terms) > 1:
            terms.pop(rng.randrange(len(terms)))
        else:
            terms.append((rng.choice((-1, 1)), rng.choice(peers)))
    return terms


def criterion_valuative(seed: int, trials: int) -> tuple[bool, str]:
    splits = 0
    for p in enumerated():
        for i, c in chow.legal_splits(p):
            if chow.valuative_check(chow.split_relation(p, i, c)) != (True, True):
                return False, f"split ({i}, {c}) of {p.rank} is not a relation"
            splits += 1
    rng = random.Random(seed)
    zero = 0
    for _ in range(100):
        terms = random_relation(rng, enumerated())
        lhs, rhs = chow.valuative_check(terms)
        if lhs != rhs:
            return False, f"classes and indicators disagree on {[(c, q.rank) for c, q in terms]}"
        zero += lhs
    return True, f"{splits} splits; 100 random relations ({zero} zero, {100 - zero} nonzero) agree"


def criterion_cubes(seed: int, trials: int) -> tuple[bool, str]:
    instances = enumerated() + random_instances(seed)
    cells = 0
    for p in instances:
        q = lift.expand(p, lift.GroundMap(p.a))
        for cell in polytopes.cube_slice(q, maximal_only=False):
            if not cell.matroid.is_matroid():
                return False, f"cell {cell.translation} of {p.rank} is not a matroid"
            if any(cell.translation) and cell.matroid.r >= p.r:
                return False, f"translated cell {cell.translation} of {p.rank} has full rank"
            cells += 1
    return True, f"{cells} cells over {len(instances)} polymatroids"


def random_matrix(rng: random.Random) -> realization.RealizationMatrix:
    m = rng.randint(1, 3)
    while True:
        blocks = tuple(rng.randint(1, 3) for _ in range(m))
        if sum(blocks) <= 6:
            break
    l = rng.randint(0, sum(blocks))
    return realization.random_realization(blocks, l, rng.randrange(2 ** 32))


def criterion_realization(seed: int, trials: int) -> tuple[bool, str]:
    r = realization.RealizationMatrix((2, 1), ((1, 0, 1), (0, 1, 1)))
    if realization.rank_function(r).rank != (0, 2, 1, 2):
        return False, "documented matrix does not give P0"
    rng = random.Random(seed)
    for _ in range(100):
        r = random_matrix(rng)
        p = realization.rank_function(r)
        if realization.rank_function(realization.realize_dual(r)) != core.dual(p):
            return False, f"duality square fails for blocks {r.blocks}"
    return True, "P0 reproduced; 100 random matrices"


NORMALIZATION_TYPES = ((1,), (2,), (3,), (1, 1), (2, 1), (2, 2), (3, 1), (1, 1, 1), (2, 1, 1))


def criterion_normalization(seed: int, trials: int) -> tuple[bool, str]:
    for a in NORMALIZATION_TYPES:
        seq = [1 << i for i in range(len(a)) for _ in range(a[i])]
        if chow.degree_hr(core.make_boolean(a), seq) != 1:
            return False, f"degree of y^a is not 1 for a = {a}"
    return True, f"{len(NORMALIZATION_TYPES)} type vectors"


def criterion_cli(seed: int, trials: int) -> tuple[bool, str]:
    results = golden.check_all()
    bad = [case.name for case, ok, _ in results if not ok]
    if bad:
        return False, f"golden cases failing: {', '.join(bad)}"
    return True, f"{len(results)} golden cases byte-identical"


CRITERIA = (
    (1, "Hall-Rado degree equals meet cascade", criterion_hr_cascade),
    (2, "volume polynomial equals basis EGF", criterion_volume_egf),
    (3, "Rado matching iff Hall-Rado", criterion_rado),
    (4, "lift projection and duality", criterion_lift),
    (5, "augmented Bergman fans pure, balanced, right support", criterion_fans),
    (6, "f-polynomial identity", criterion_hpoly),
    (7, "dragon Hall-Rado", criterion_dragon),
    (8, "valuativity", criterion_valuative),
    (9, "cube slicing", criterion_cubes),
    (10, "realization", criterion_realization),
    (11, "degree normalization", criterion_normalization),
    (12, "CLI golden files", criterion_cli),
)


def run_criterion(number: int, seed: int = 0, trials: int = 1000) -> CriterionResult:
    _, name, fn = CRITERIA[number - 1]
    try:
        passed, detail = fn(seed, trials)
    except Exception as exc:  # a crash is a failure, reported with its type
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, name, passed, detail)


def run_all(seed: int = 0, trials: int = 1000) -> list[CriterionResult]:
    return [run_criterion(k, seed, trials) for k in range(1, len(CRITERIA) + 1)]
