"""Cohomological dimension of compacta through their dimension functions.

A compactum X enters only through its profile d_X : H -> dim_H(X) on
Bockstein groups.  Profiles are Bockstein functions that are either
identically 0 (totally disconnected X) or >= 1 everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Tuple

from . import abelian, bockstein
from .abelian import BasicGroup, Group
from .bockstein import GENERIC, BocksteinFunction, PrimeTriple
from .extnum import INF, NEG_INF, ExtInt, ext
from .graded import GradedGroup, dim_coeff, graded, direct_sum

__all__ = [
    "CompactumProfile",
    "ProfileError",
    "DiscrepancyError",
    "MooreSpaceSpec",
    "dim_with_coefficients",
    "dim_of_smash",
    "smash_clauses",
    "dim_graded_coefficients",
    "sp_absolute_extensor",
    "moore_space_spec",
    "test_space",
    "realization_precondition",
]


class ProfileError(ValueError):
    """A function that cannot be the dimension profile of a compactum."""


class DiscrepancyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


def _values(f) -> list:
    vals = [f.q]
    for _, t in f.slots():
        vals.extend(t)
    return vals


@dataclass(frozen=True)
class CompactumProfile:
    d: BocksteinFunction

    def __post_init__(self):
        d = self.d
        if not isinstance(d, BocksteinFunction):
            d = bockstein.validate(d)
            object.__setattr__(self, "d", d)
        if d != bockstein.ZERO_FUNCTION and any(v < 1 for v in _values(d)):
            raise ProfileError(f"profile must be identically 0 or >= 1 everywhere: {d}")

    def value(self, h: BasicGroup) -> ExtInt:
        return self.d.value(h)

    def primes(self) -> frozenset:
        return self.d.primes()

    def is_zero(self) -> bool:
        return self.d == bockstein.ZERO_FUNCTION

    def to_json(self) -> dict:
        return dict(self.d.to_json(), kind="d_X")

    @classmethod
    def from_json(cls, data: Mapping) -> "CompactumProfile":
        data = dict(data)
        kind = data.pop("kind", "d_X")
        if kind != "d_X":
            raise ProfileError(f"expected kind 'd_X', got {kind!r}")
        return cls(bockstein.validate(data))

    def __str__(self):
        return f"d_X{self.d}"


def dim_with_coefficients(x: CompactumProfile, g) -> ExtInt:
    """dim_G(X) as the sup of d_X over the Bockstein basis of G."""
    g = abelian._as_group(g)
    if g.is_zero():
        return NEG_INF
    basis = abelian.bockstein_basis(g)
    primes = set(basis.primes()) | set(x.primes())
    primes.add(abelian.fresh_prime(primes))
    members = basis.members(primes)
    return max((x.value(h) for h in members), default=NEG_INF)


def _clauses_at(qx, tx: PrimeTriple, qy, ty: PrimeTriple) -> PrimeTriple:
    mod = tx.mod + ty.mod
    pru = max(tx.pru + ty.pru, mod - 1)
    if tx.loc == tx.pru or ty.loc == ty.pru:
        loc = tx.loc + ty.loc
    else:
        loc = max(pru + 1, qx + qy)
    return PrimeTriple(loc, mod, pru)


def smash_clauses(x: CompactumProfile, y: CompactumProfile) -> BocksteinFunction:
    """d_{X^Y} read directly off the four per-group product formulas."""
    dx, dy = x.d, y.d
    primes = dx.primes() | dy.primes()
    default = _clauses_at(dx.q, dx.default, dy.q, dy.default)
    ex = {p: _clauses_at(dx.q, dx.triple(p), dy.q, dy.triple(p)) for p in primes}
    return BocksteinFunction(dx.q + dy.q, default, ex)


def dim_of_smash(x: CompactumProfile, y: CompactumProfile) -> CompactumProfile:
    """Profile of X ^ Y, computed twice (product formulas and sum-product)."""
    direct = smash_clauses(x, y)
    via_dual = bockstein.sum_product(x.d, y.d)
    if direct != via_dual:
        raise DiscrepancyError(f"dim_of_smash: clauses give {direct}, sum-product gives {via_dual}")
    return CompactumProfile(direct)


def dim_graded_coefficients(x: CompactumProfile, a: GradedGroup) -> ExtInt:
    """dim_A(X) = sup_n (dim_{A(n)}(X) - n); -inf for A = 0."""
    best = NEG_INF
    for n, g in a.items():
        best = max(best, dim_with_coefficients(x, g) - n)
    return best


def sp_absolute_extensor(x: CompactumProfile, e_k: BocksteinFunction) -> bool:
    """Whether SP(K) is an absolute extensor of X, given e^K."""
    return bockstein.leq(x.d, e_k)


@dataclass(frozen=True)
class MooreSpaceSpec:
    """Wedge of Moore spaces M(H, n): explicit summands plus the generic pattern."""

    summands: Tuple[Tuple[BasicGroup, int], ...]
    generic: PrimeTriple

    def to_json(self) -> dict:
        return {
            "summands": [[str(h), n] for h, n in self.summands],
            "generic": self.generic.to_json(),
        }

    def __str__(self):
        body = " v ".join(f"M({h},{n})" for h, n in self.summands)
        return f"{body or 'pt'} v generic{self.generic}"


def moore_space_spec(alpha: BocksteinFunction) -> MooreSpaceSpec:
    if any(v < 1 for v in _values(alpha)):
        raise ProfileError(f"Moore space needs values >= 1: {alpha}")
    summands = []
    if alpha.q.is_finite:
        summands.append((abelian.Q.summands[0], int(alpha.q)))
    for p in sorted(alpha.primes()):
        for h in abelian.bockstein_groups(p):
            v = alpha.value(h)
            if v.is_finite:
                summands.append((h, int(v)))
    return MooreSpaceSpec(tuple(summands), alpha.default)


def test_space(g, n: int) -> CompactumProfile:
    """Profile of the test compactum T with dim_Z(X ^ T) = dim_G(X) + n.

    T has the dimension type of B = S^-n(G) + S^-1(Z), so d_T = -d_B.
    """
    g = abelian._as_group(g)
    if g.is_zero():
        raise ValueError("test space needs a nonzero group")
    if isinstance(n, bool) or not isinstance(n, int) or n <= 1:
        raise ValueError(f"test space needs an integer n > 1, got {n!r}")
    b = direct_sum(graded(g, -n), graded(abelian.Z, -1))
    primes = sorted(g.primes())
    generic = abelian.fresh_prime(primes)

    def neg_d(h):
        return -dim_coeff(b, Group([h]))

    def triple(p):
        return PrimeTriple(*(neg_d(h) for h in abelian.bockstein_groups(p)))

    d = BocksteinFunction(neg_d(abelian.Q.summands[0]), triple(generic), {p: triple(p) for p in primes})
    if not all(1 <= v <= n for v in _values(d)):
        raise DiscrepancyError(f"test space profile out of [1, {n}]: {d}")
    return CompactumProfile(d)


def realization_precondition(alpha, n: int) -> bool:
    """Hypothesis of the realization theorem: a Bockstein function into [1, n]."""
    try:
        alpha = bockstein.validate(alpha)
    except (bockstein.BocksteinAxiomError, TypeError, ValueError):
        return False
    return n >= 1 and all(1 <= v <= n for v in _values(alpha))
