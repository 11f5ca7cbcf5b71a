"""Seeded random generators for Bockstein functions, profiles and graded groups."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from . import abelian
from .abelian import Group
from .bockstein import BocksteinFunction, PrimeTriple, axiom_violations
from .extnum import INF, NEG_INF, ExtInt
from .graded import GradedGroup

DEFAULT_PRIMES = (2, 3, 5, 7)


def value_range(lo: int, hi: int, pos_inf=True, neg_inf=True) -> Tuple[ExtInt, ...]:
    vals = [ExtInt(i) for i in range(lo, hi + 1)]
    if neg_inf:
        vals.insert(0, NEG_INF)
    if pos_inf:
        vals.append(INF)
    return tuple(vals)


FULL_VALUES = value_range(-4, 4)
FINITE_VALUES = value_range(-4, 4, pos_inf=False, neg_inf=False)


@lru_cache(maxsize=None)
def _valid_triples(q: ExtInt, values: Tuple[ExtInt, ...]) -> Tuple[PrimeTriple, ...]:
    out = []
    for loc in values:
        for mod in values:
            for pru in values:
                t = PrimeTriple(loc, mod, pru)
                if not axiom_violations(q, t):
                    out.append(t)
    return tuple(out)


def random_function(
    rng: random.Random,
    values: Sequence[ExtInt] = FULL_VALUES,
    primes: Sequence[int] = DEFAULT_PRIMES,
    max_exceptions: int = 2,
) -> BocksteinFunction:
    """A uniformly drawn valid pattern: q first, then valid triples for q."""
    values = tuple(values)
    while True:
        q = rng.choice(values)
        triples = _valid_triples(q, values)
        if triples:
            break
    default = rng.choice(triples)
    n = rng.randint(0, min(max_exceptions, len(primes)))
    ex = {p: rng.choice(triples) for p in rng.sample(list(primes), n)}
    return BocksteinFunction(q, default, ex)


PROFILE_VALUES = value_range(1, 5, pos_inf=True, neg_inf=False)


def random_profile_function(
    rng: random.Random,
    primes: Sequence[int] = DEFAULT_PRIMES,
    max_exceptions: int = 2,
    zero_rate: float = 0.1,
) -> BocksteinFunction:
    """d-function shape of a compactum: identically 0 or >= 1 everywhere."""
    if rng.random() < zero_rate:
        return BocksteinFunction()
    return random_function(rng, PROFILE_VALUES, primes, max_exceptions)


def basic_universe(primes: Sequence[int] = (2, 3, 5), max_exp: int = 3) -> list:
    """Z, Q and Z/p..Z/p^max_exp, Z/p^inf, Z_(p) for each prime."""
    out = [abelian.Z, abelian.Q]
    for p in primes:
        out += [Group([abelian.cyclic(p, k)]) for k in range(1, max_exp + 1)]
        out += [Group([abelian.prufer(p)]), Group([abelian.localized(p)])]
    return out


def random_group(rng: random.Random, primes: Sequence[int] = (2, 3, 5), max_summands: int = 3) -> Group:
    pool = [abelian.BasicGroup(abelian.Z_K), abelian.BasicGroup(abelian.Q_K)]
    for p in primes:
        pool += [abelian.cyclic(p, 1), abelian.cyclic(p, 2), abelian.prufer(p), abelian.localized(p)]
    return Group(rng.choice(pool) for _ in range(rng.randint(1, max_summands)))


def random_graded(
    rng: random.Random,
    primes: Sequence[int] = (2, 3, 5),
    degrees: Tuple[int, int] = (-4, 4),
    max_summands: int = 3,
    max_degrees: int = 3,
    zero_rate: float = 0.05,
) -> GradedGroup:
    if rng.random() < zero_rate:
        return GradedGroup()
    lo, hi = degrees
    terms = {}
    for d in rng.sample(range(lo, hi + 1), rng.randint(1, max_degrees)):
        terms[d] = random_group(rng, primes, max_summands)
    return GradedGroup(terms)


def make_rng(seed: Optional[int]) -> random.Random:
    return random.Random(seed)
