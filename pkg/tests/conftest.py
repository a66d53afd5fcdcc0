from itertools import product

import pytest
from hypothesis import strategies as st

from polychow.core import (elements_of, enumerate_polymatroids, make_boolean,
                           make_zero, validate)

P0_TABLE = [0, 2, 1, 2]
P1_TABLE = [0, 2, 2, 3]

SMALL_TYPES = [(1,), (2,), (1, 1), (2, 1), (1, 2), (2, 2)]


def brute_force_is_polymatroid(table, a):
    """Axioms checked literally over all pairs of subsets."""
    m = len(a)
    size = 1 << m
    if table[0] != 0 or any(v < 0 for v in table):
        return False
    for s in range(size):
        for t in range(size):
            if s & t == s and table[s] > table[t]:
                return False
            if table[s] + table[t] < table[s | t] + table[s & t]:
                return False
    return all(table[1 << i] <= a[i] for i in range(m))


def brute_force_polymatroids(a):
    m = len(a)
    top = sum(a)
    out = []
    for rest in product(range(top + 1), repeat=(1 << m) - 1):
        table = [0, *rest]
        if brute_force_is_polymatroid(table, a):
            out.append(tuple(table))
    return out


def hall_rado_oracle(p, seq):
    """rk(union S_j) >= |J| over every subset J of positions."""
    k = len(seq)
    for jmask in range(1, 1 << k):
        u = 0
        for j in elements_of(jmask):
            u |= seq[j]
        if p.rank[u] < len(elements_of(jmask)):
            return False
    return True


@pytest.fixture
def p0():
    return validate(P0_TABLE, (2, 1))


@pytest.fixture
def p1():
    return validate(P1_TABLE, (2, 2))


POOL = {a: enumerate_polymatroids(a) for a in SMALL_TYPES + [(1, 1, 1), (2, 1, 1)]}


def polymatroids(types=tuple(POOL)):
    return st.sampled_from(types).flatmap(lambda a: st.sampled_from(POOL[a]))


def sequences(p, min_size=0, max_size=None):
    max_size = p.r + 1 if max_size is None else max_size
    return st.lists(st.integers(1, (1 << p.m) - 1), min_size=min_size, max_size=max_size)


def boolean_and_zero(a):
    return make_boolean(a), make_zero(a)
