"""Brute-force d- and e-functions, used to cross-check the closed forms.

Two independent routes are provided.

The concrete route works on finitely supported graded groups: it builds
GG(alpha) over a finite prime scope, expands smash products by the tensor /
Tor tables and reads dimensions off directly.  It needs finite values (+inf
is fine, it just drops a summand).

The min-plus route never builds a graded group.  It uses::

    d_{GG(alpha)}(H) = min_F  alpha(F) + dim_H(F)
    e_A(H)           = max_F  d_A(F) - dim_F(H)     (over F with dim_F(H) finite)

with F ranging over Bockstein groups, so suspensions by -inf are handled by
extended arithmetic and every value in Z u {+-inf} can be checked.

All tables are uniform in the prime, so a scope holds the primes that occur
in the inputs plus a fresh "generic" prime standing for all the others.
"""

from __future__ import annotations

import json
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import abelian, bockstein
from .abelian import BasicGroup, Group, dim_group
from .bockstein import GENERIC, BocksteinFunction, DFunction, PrimeTriple
from .extnum import INF, NEG_INF, ExtInt
from .graded import GradedGroup, cin, dim_coeff, graded, smash as graded_smash

__all__ = [
    "PrimeScope",
    "Report",
    "d_function",
    "e_function",
    "verify_smash",
    "verify_dual",
    "verify_d_conversion",
    "verify_identity",
    "minplus_d_function",
    "minplus_e_from_d",
    "minplus_smash",
    "minplus_dual",
    "run_corpus",
    "VERIFY_KINDS",
]

_Q = abelian.Q.summands[0]


@dataclass(frozen=True)
class PrimeScope:
    """Finite set of primes plus one fresh prime standing for all others."""

    primes: Tuple[int, ...]
    generic: int

    def __post_init__(self):
        if self.generic in self.primes:
            raise ValueError("generic prime must lie outside the scope")

    @classmethod
    def covering(cls, *objects, extra: Iterable[int] = ()) -> "PrimeScope":
        ps = set(extra)
        for obj in objects:
            ps |= set(obj.primes())
        return cls(tuple(sorted(ps)), abelian.fresh_prime(ps))

    @property
    def all_primes(self) -> Tuple[int, ...]:
        return self.primes + (self.generic,)

    def with_spare(self) -> Tuple[int, ...]:
        """All primes plus a second generic prime (for cross-prime pairs)."""
        return self.all_primes + (abelian.fresh_prime(self.all_primes),)

    def label(self, p: int):
        return GENERIC if p == self.generic else p


def bockstein_universe(primes: Sequence[int]) -> List[BasicGroup]:
    out = [_Q]
    for p in primes:
        out.extend(abelian.bockstein_groups(p))
    return out


def test_universe(scope: PrimeScope) -> List[Group]:
    """Coefficient groups used by the e-function sup."""
    out = [abelian.Z, abelian.Q]
    for p in scope.all_primes:
        out += [
            Group([abelian.cyclic(p, 1)]),
            Group([abelian.cyclic(p, 2)]),
            Group([abelian.prufer(p)]),
            Group([abelian.localized(p)]),
        ]
    return out


def _pack(values: Dict[BasicGroup, ExtInt], scope: PrimeScope, cls):
    def triple(p):
        loc, mod, pru = abelian.bockstein_groups(p)
        return PrimeTriple(values[loc], values[mod], values[pru])

    return cls(values[_Q], triple(scope.generic), {p: triple(p) for p in scope.primes})


def _scope_for(scope, *objects) -> PrimeScope:
    if scope is None:
        return PrimeScope.covering(*objects)
    if isinstance(scope, PrimeScope):
        needed = set()
        for obj in objects:
            needed |= set(obj.primes())
        if not needed <= set(scope.all_primes):
            return PrimeScope.covering(*objects, extra=scope.primes)
        return scope
    return PrimeScope.covering(*objects, extra=scope)


# -- concrete route -----------------------------------------------------------

def d_function(a: GradedGroup, scope=None) -> DFunction:
    """H -> dim_H(A) on Q and the triples of every scope prime."""
    scope = _scope_for(scope, a)
    values = {h: dim_coeff(a, Group([h])) for h in bockstein_universe(scope.all_primes)}
    return _pack(values, scope, DFunction)


def e_function(a: GradedGroup, scope=None) -> BocksteinFunction:
    """e_A(H) = least m with dim(A) <= dim(S^m H), by the sup over test groups."""
    if a.is_zero():
        raise ValueError("the zero graded group has e-function +inf everywhere")
    scope = _scope_for(scope, a)
    tests = test_universe(scope)
    dims = [dim_coeff(a, f) for f in tests]
    values = {}
    for h in bockstein_universe(scope.all_primes):
        best = NEG_INF
        for f, df in zip(tests, dims):
            k = dim_group(f, h)
            if k.is_finite:
                best = max(best, df - k)
        values[h] = best
    return _pack(values, scope, BocksteinFunction)


@dataclass
class Report:
    case: str
    passed: bool
    path_a: dict = field(default_factory=dict)
    path_b: dict = field(default_factory=dict)
    first_divergence: Optional[Tuple[object, str]] = None

    def to_json(self) -> dict:
        div = None
        if self.first_divergence is not None:
            p, g = self.first_divergence
            div = {"prime": p, "group": g}
        return {"case": self.case, "passed": self.passed, "path_a": self.path_a,
                "path_b": self.path_b, "first_divergence": div}

    def __bool__(self):
        return self.passed


_COORDS = (("Z_(p)", "loc"), ("Z/p", "mod"), ("Z/p^inf", "pru"))


def _divergence(fa, fb, scope: PrimeScope):
    """First (prime, group) where two patterns differ on the scope, or None."""
    if fa.q != fb.q:
        return ("-", "Q")
    for p in scope.primes + (GENERIC,):
        ta, tb = fa.triple(p), fb.triple(p)
        for name, attr in _COORDS:
            if getattr(ta, attr) != getattr(tb, attr):
                return (p, name)
    return None


def _compare(case: str, closed, brute, scope: PrimeScope) -> Report:
    div = _divergence(closed, brute, scope)
    return Report(case, div is None, closed.to_json(), brute.to_json(), div)


def verify_smash(alpha, beta, scope=None, smash=bockstein.smash) -> Report:
    """Closed-form smash against e(GG(alpha) ^ GG(beta)) computed concretely."""
    scope = _scope_for(scope, alpha, beta)
    case = f"smash {alpha} {beta}"
    try:
        closed = smash(alpha, beta)
    except bockstein.ClosureError as err:
        return Report(case, False, {"error": str(err)}, {}, ("-", "closure"))
    if _has_neg_inf(alpha) or _has_neg_inf(beta):
        return _compare(case, closed, minplus_smash(alpha, beta, scope), scope)
    ga = bockstein.gg_restrict(alpha, scope.all_primes)
    gb = bockstein.gg_restrict(beta, scope.all_primes)
    prod = graded_smash(ga, gb)
    if prod.is_zero():
        brute = bockstein.constant(INF)
    else:
        brute = e_function(prod, scope)
    return _compare(case, closed, brute, scope)


@lru_cache(maxsize=None)
def _cin_pair(f: BasicGroup, g: BasicGroup) -> ExtInt:
    return cin(graded_smash(graded(f), graded(g)))


def _nonnegative(gamma, alpha, primes) -> bool:
    # e_C >= 0 everywhere iff C = GG(gamma) ^ GG(alpha) vanishes in negative
    # degrees; cin(C) is a min-plus sum, and +inf (no summand) absorbs -inf
    groups = bockstein_universe(primes)
    return all(gamma.value(f) + alpha.value(g) + _cin_pair(f, g) >= 0
               for f in groups for g in groups)


def _lowered(f: BocksteinFunction, scope: PrimeScope):
    """Valid functions obtained by lowering one coordinate of f by one."""
    out = []
    base = f.to_json()
    if f.q.is_finite:
        cand = dict(base, Q=f.q.to_json() - 1)
        out.append(("Q", cand))
    for p in scope.primes + (GENERIC,):
        t = f.triple(p)
        for name, attr in _COORDS:
            v = getattr(t, attr)
            if not v.is_finite:
                continue
            nt = t._replace(**{attr: v - 1})
            cand = json.loads(json.dumps(base))
            if p == GENERIC:
                cand["default"] = nt.to_json()
                for q_, tt in f.exceptions:
                    cand["exceptions"].setdefault(str(q_), tt.to_json())
                # primes in scope that used the default keep the old triple
                for q_ in scope.primes:
                    cand["exceptions"].setdefault(str(q_), f.triple(q_).to_json())
            else:
                cand["exceptions"][str(p)] = nt.to_json()
            out.append((f"{p}:{name}", cand))
    valid = []
    for label, cand in out:
        try:
            valid.append((label, bockstein.validate(cand)))
        except bockstein.BocksteinAxiomError:
            pass
    return valid


def verify_dual(alpha, scope=None, dual=bockstein.dual) -> Report:
    """Closed-form dual against the concrete d-function and the defining property.

    Checks (1) alpha* = -d_{GG(alpha)} on the scope, (2) GG(alpha*) ^ GG(alpha)
    is non-negative, and (3) lowering any coordinate of alpha* breaks (2).
    """
    scope = _scope_for(scope, alpha)
    case = f"dual {alpha}"
    try:
        closed = dual(alpha)
    except bockstein.ClosureError as err:
        return Report(case, False, {"error": str(err)}, {}, ("-", "closure"))
    d = _d_of_gg(alpha, scope)
    negd = DFunction(-d.q, _neg_t(d.default), {p: _neg_t(t) for p, t in d.exceptions})
    closed_as_d = DFunction(closed.q, closed.default, dict(closed.exceptions))
    div = _divergence(closed_as_d, negd, scope)
    if div is not None:
        return Report(case, False, closed.to_json(), negd.to_json(), div)
    primes = scope.with_spare()
    if not _nonnegative(closed, alpha, primes):
        return Report(case, False, closed.to_json(), {"nonnegative": False}, ("-", "nonnegativity"))
    for label, gamma in _lowered(closed, scope):
        if _nonnegative(gamma, alpha, primes):
            return Report(case, False, closed.to_json(), {"smaller_witness": gamma.to_json()},
                          (label, "minimality"))
    return Report(case, True, closed.to_json(), negd.to_json(), None)


def _has_neg_inf(f) -> bool:
    vals = [f.q]
    for _, t in f.slots():
        vals.extend(t)
    return any(v.is_neg_inf for v in vals)


def _d_of_gg(alpha, scope: PrimeScope) -> DFunction:
    # -inf values have no finite graded realization; use the min-plus route
    if _has_neg_inf(alpha):
        return minplus_d_function(alpha, scope)
    return d_function(bockstein.gg_restrict(alpha, scope.all_primes), scope)


def _neg_t(t: PrimeTriple) -> PrimeTriple:
    return PrimeTriple(-t.loc, -t.mod, -t.pru)


def verify_d_conversion(alpha, scope=None, convert=bockstein.gg_d_function) -> Report:
    """Closed-form d-function of GG(alpha) against dim_H computed concretely."""
    scope = _scope_for(scope, alpha)
    closed = convert(alpha)
    brute = _d_of_gg(alpha, scope)
    return _compare(f"dconv {alpha}", closed, brute, scope)


def verify_identity(alpha, beta, scope=None) -> Report:
    """alpha [+] beta against (alpha* ^ beta*)*, both closed-form."""
    scope = _scope_for(scope, alpha, beta)
    lhs = bockstein.sum_product(alpha, beta)
    rhs = bockstein.dual(bockstein.smash(bockstein.dual(alpha), bockstein.dual(beta)))
    return _compare(f"identity {alpha} {beta}", lhs, rhs, scope)


# -- min-plus route -------------------------------------------------------------

def _pattern_values(f, groups) -> Dict[BasicGroup, ExtInt]:
    return {h: f.value(h) for h in groups}


def minplus_d_function(alpha, scope=None) -> DFunction:
    scope = _scope_for(scope, alpha)
    groups = bockstein_universe(scope.with_spare())
    vals = _pattern_values(alpha, groups)
    d = {h: min(vals[f] + dim_group(h, f) for f in groups) for h in groups}
    return _pack(d, scope, DFunction)


def minplus_e_from_d(d: Dict[BasicGroup, ExtInt], scope: PrimeScope) -> BocksteinFunction:
    groups = list(d)
    e = {}
    for h in groups:
        best = NEG_INF
        for f in groups:
            k = dim_group(f, h)
            if k.is_finite:
                best = max(best, d[f] - k)
        e[h] = best
    return _pack(e, scope, BocksteinFunction)


_PAIR_DIMS: Dict[Tuple[BasicGroup, BasicGroup, BasicGroup], ExtInt] = {}


def _pair_dim(h, f, g) -> ExtInt:
    key = (h, f, g)
    if key not in _PAIR_DIMS:
        _PAIR_DIMS[key] = dim_coeff(graded_smash(graded(f), graded(g)), Group([h]))
    return _PAIR_DIMS[key]


def minplus_smash(alpha, beta, scope=None) -> BocksteinFunction:
    """e-function of GG(alpha) ^ GG(beta) via min-plus over pairs of Bockstein groups."""
    scope = _scope_for(scope, alpha, beta)
    groups = bockstein_universe(scope.with_spare())
    va, vb = _pattern_values(alpha, groups), _pattern_values(beta, groups)
    d = {}
    for h in groups:
        d[h] = min(va[f] + vb[g] + _pair_dim(h, f, g) for f in groups for g in groups)
    return minplus_e_from_d(d, scope)


def minplus_dual(alpha, scope=None) -> BocksteinFunction:
    """alpha* = -d_{GG(alpha)}, from the min-plus d-function."""
    scope = _scope_for(scope, alpha)
    d = minplus_d_function(alpha, scope)
    return BocksteinFunction(-d.q, _neg_t(d.default), {p: _neg_t(t) for p, t in d.exceptions})


# -- corpus runner ----------------------------------------------------------------

VERIFY_KINDS = ("smash", "dual", "dconv", "identity")


def run_corpus(kind: str, seed: int, cases: int, primes: Sequence[int] = (2, 3, 5, 7),
               infinite: bool = False) -> List[Report]:
    """Seeded batch of verify_* reports; deterministic in (kind, seed, cases, primes)."""
    from . import corpus

    if kind not in VERIFY_KINDS:
        raise ValueError(f"unknown verification {kind!r}; choose from {', '.join(VERIFY_KINDS)}")
    rng = corpus.make_rng(seed)
    values = corpus.FULL_VALUES if infinite else corpus.FINITE_VALUES
    draw = lambda: corpus.random_function(rng, values, primes)
    reports = []
    for _ in range(cases):
        if kind == "smash":
            reports.append(verify_smash(draw(), draw()))
        elif kind == "dual":
            reports.append(verify_dual(draw()))
        elif kind == "dconv":
            reports.append(verify_d_conversion(draw()))
        else:
            reports.append(verify_identity(draw(), draw()))
    return reports
