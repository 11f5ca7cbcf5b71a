"""Bockstein functions and their closed-form algebra.

A Bockstein function assigns an extended integer to every Bockstein group:
Q, and for each prime p the triple (Z_(p), Z/p, Z/p^inf).  It is stored as
the value at Q, a default triple shared by all but finitely many primes, and
a table of exceptional primes.  Every operation here is prime-local, so it is
evaluated once on the default triple and once per exceptional prime.

Operations (smash, dual, sum-product, lattice) implement the known closed
formulas.  Two refinements matter once infinite values appear:

* The regular clauses apply to a triple with ``loc == pru`` only when the
  common value is not ``+inf`` above ``q``.  A triple ``(q, +inf, m, +inf)``
  with finite ``q`` has Z_(p)-dimension ``q`` on the dimension side, so it is
  handled by the singular clauses (see :func:`is_p_regular` for the plain
  predicate).
* Sum-product is the dual of smash and adds in the dual convention, where
  ``-inf`` absorbs ``+inf``.

Results are re-validated; a result that breaks an axiom raises
:class:`ClosureError` instead of being repaired.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple

from . import abelian
from .abelian import BasicGroup
from .extnum import INF, NEG_INF, ExtInt, ext, neg
from .graded import GradedGroup

__all__ = [
    "PrimeTriple",
    "BocksteinFunction",
    "DFunction",
    "BocksteinAxiomError",
    "ClosureError",
    "GENERIC",
    "ZERO_FUNCTION",
    "constant",
    "axiom_violations",
    "validate",
    "evaluate",
    "is_p_regular",
    "smash",
    "dual",
    "sum_product",
    "duality_identity_check",
    "shift",
    "leq",
    "lattice_min",
    "lattice_max",
    "gg_d_function",
    "e_from_d",
    "gg_restrict",
    "dual_add",
]

GENERIC = "generic"

AXIOMS = {
    1: "pru <= mod",
    2: "mod <= pru + 1",
    3: "q <= loc",
    4: "mod <= loc",
    5: "pru <= max(q, loc - 1)",
    6: "loc <= max(q, pru + 1)",
}


class PrimeTriple(NamedTuple):
    """Values at (Z_(p), Z/p, Z/p^inf) for one prime."""

    loc: ExtInt
    mod: ExtInt
    pru: ExtInt

    @classmethod
    def of(cls, loc, mod, pru) -> "PrimeTriple":
        return cls(ext(loc), ext(mod), ext(pru))

    def to_json(self) -> dict:
        return {"loc": self.loc.to_json(), "mod": self.mod.to_json(), "pru": self.pru.to_json()}

    def __str__(self):
        return f"({self.loc},{self.mod},{self.pru})"


def _as_triple(t) -> PrimeTriple:
    if isinstance(t, PrimeTriple):
        return t
    if isinstance(t, Mapping):
        return PrimeTriple.of(t["loc"], t["mod"], t["pru"])
    return PrimeTriple.of(*t)


class BocksteinAxiomError(ValueError):
    """A candidate pattern breaks one or more axioms.

    ``violations`` lists ``(prime, axiom)`` pairs; the prime is ``"generic"``
    for the default triple.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        detail = ", ".join(f"(p={p}, axiom {a})" for p, a in self.violations)
        super().__init__(f"not a Bockstein function: {detail}")


class ClosureError(RuntimeError):
    """An operation on valid inputs produced an invalid result."""


def axiom_violations(q, t: PrimeTriple) -> list:
    q = ext(q)
    loc, mod, pru = t
    checks = (
        pru <= mod,
        mod <= pru + 1,
        q <= loc,
        mod <= loc,
        pru <= max(q, loc - 1),
        loc <= max(q, pru + 1),
    )
    return [i + 1 for i, ok in enumerate(checks) if not ok]


class _PrimePattern:
    """Shared storage: value at Q, default triple, finite exceptions."""

    __slots__ = ("q", "default", "exceptions")
    kind = "pattern"

    def __init__(self, q=0, default=(0, 0, 0), exceptions: Optional[Mapping] = None):
        q = ext(q)
        default = _as_triple(default)
        ex = {}
        for p, t in (exceptions or {}).items():
            p = int(p)
            if not abelian.isprime(p):
                raise ValueError(f"exception key {p} is not a prime")
            t = _as_triple(t)
            if t != default:
                ex[p] = t
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "default", default)
        object.__setattr__(self, "exceptions", tuple(sorted(ex.items())))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def triple(self, p=GENERIC) -> PrimeTriple:
        if p == GENERIC or p is None:
            return self.default
        for prime, t in self.exceptions:
            if prime == p:
                return t
        return self.default

    def primes(self) -> frozenset:
        return frozenset(p for p, _ in self.exceptions)

    def value(self, h: BasicGroup) -> ExtInt:
        if h.kind == abelian.Q_K:
            return self.q
        if not h.is_bockstein:
            raise ValueError(f"{h} is not a Bockstein group")
        t = self.triple(h.p)
        return {abelian.LOC_K: t.loc, abelian.CYC_K: t.mod, abelian.PRU_K: t.pru}[h.kind]

    def slots(self, primes: Iterable = ()) -> Iterator[Tuple[object, PrimeTriple]]:
        """(label, triple) for the default and each relevant prime."""
        yield GENERIC, self.default
        for p in sorted(set(primes) | self.primes()):
            yield p, self.triple(p)

    def _key(self):
        return (self.kind, self.q, self.default, self.exceptions)

    def __eq__(self, other):
        if not isinstance(other, _PrimePattern):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self) -> dict:
        return {
            "Q": self.q.to_json(),
            "default": self.default.to_json(),
            "exceptions": {str(p): t.to_json() for p, t in self.exceptions},
        }

    def __str__(self):
        parts = [f"Q:{self.q}", f"*:{self.default}"]
        parts += [f"{p}:{t}" for p, t in self.exceptions]
        return "{" + ", ".join(parts) + "}"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class BocksteinFunction(_PrimePattern):
    """A Bockstein function (an e-function); validated on construction."""

    __slots__ = ()
    kind = "e"

    def __init__(self, q=0, default=(0, 0, 0), exceptions=None):
        super().__init__(q, default, exceptions)
        bad = [(label, a) for label, t in self.slots() for a in axiom_violations(self.q, t)]
        if bad:
            raise BocksteinAxiomError(bad)

    @classmethod
    def from_json(cls, data: Mapping) -> "BocksteinFunction":
        return validate(data)

    def __le__(self, other):
        return leq(self, other)


class DFunction(_PrimePattern):
    """A dimension-like pattern d_A restricted to Bockstein groups.

    Not required to satisfy the Bockstein axioms, and deliberately not
    accepted by the e-function operations.
    """

    __slots__ = ()
    kind = "d"

    @classmethod
    def from_json(cls, data: Mapping) -> "DFunction":
        return cls(data["Q"], data["default"], data.get("exceptions"))


ZERO_FUNCTION = BocksteinFunction()


def constant(k) -> BocksteinFunction:
    k = ext(k)
    return BocksteinFunction(k, (k, k, k))


def validate(candidate) -> BocksteinFunction:
    """Check a raw pattern (JSON-shaped mapping or pattern object).

    Returns the validated function or raises :class:`BocksteinAxiomError`
    naming every violated ``(prime, axiom)``.
    """
    if isinstance(candidate, BocksteinFunction):
        return candidate
    if isinstance(candidate, _PrimePattern):
        return BocksteinFunction(candidate.q, candidate.default, dict(candidate.exceptions))
    if not isinstance(candidate, Mapping):
        raise TypeError(f"cannot validate {candidate!r}")
    unknown = set(candidate) - {"Q", "default", "exceptions", "kind"}
    if unknown:
        raise ValueError(f"unknown keys in Bockstein pattern: {sorted(unknown)}")
    return BocksteinFunction(
        candidate.get("Q", 0),
        candidate.get("default", (0, 0, 0)),
        candidate.get("exceptions") or {},
    )


def evaluate(beta: _PrimePattern, h) -> ExtInt:
    if isinstance(h, abelian.Group):
        if len(h) != 1:
            raise ValueError(f"{h} is not a single Bockstein group")
        (h,) = h.summands
    return beta.value(h)


def is_p_regular(beta: _PrimePattern, p=GENERIC) -> bool:
    """True when the values at Z/p^inf and Z_(p) coincide."""
    t = beta.triple(p)
    return t.loc == t.pru


def _regular(q: ExtInt, t: PrimeTriple) -> bool:
    # loc == pru == +inf over a smaller q is singular on the dimension side
    return t.loc == t.pru and not (t.loc.is_pos_inf and q < INF)


def dual_add(a, b) -> ExtInt:
    """Addition in which -inf absorbs +inf (negation-conjugate of ``+``)."""
    return neg(neg(ext(a)) + neg(ext(b)))


def _check_e(*fs):
    for f in fs:
        if not isinstance(f, BocksteinFunction):
            raise TypeError(f"expected a Bockstein function, got {type(f).__name__}")


def _build(cls, q, default, exceptions, op: str):
    try:
        return cls(q, default, exceptions)
    except BocksteinAxiomError as err:
        raise ClosureError(f"{op} produced an invalid function: {err}") from err


def _lift(op: str, q_fn: Callable, t_fn: Callable, *fs, cls=BocksteinFunction):
    """Apply prime-local kernels at the default triple and every exception."""
    primes = set()
    for f in fs:
        primes |= f.primes()
    qs = [f.q for f in fs]
    default = t_fn(*[(f.q, f.default) for f in fs])
    ex = {p: t_fn(*[(f.q, f.triple(p)) for f in fs]) for p in primes}
    return _build(cls, q_fn(*qs), default, ex, op)


# -- smash ---------------------------------------------------------------------

def _smash_at(a, b) -> PrimeTriple:
    (qa, ta), (qb, tb) = a, b
    gq = qa + qb
    gloc, gmod, gpru = ta.loc + tb.loc, ta.mod + tb.mod, ta.pru + tb.pru
    if _regular(qa, ta) or _regular(qb, tb):
        return PrimeTriple(gloc, gmod, gpru)
    pru = min(gmod, gpru + 1)
    return PrimeTriple(max(gq, pru + 1), gmod, pru)


def smash(alpha: BocksteinFunction, beta: BocksteinFunction) -> BocksteinFunction:
    """Extension function of GG(alpha) ^ GG(beta)."""
    _check_e(alpha, beta)
    return _lift("smash", lambda a, b: a + b, _smash_at, alpha, beta)


# -- dual ------------------------------------------------------------------------

def _dual_at(a) -> PrimeTriple:
    q, t = a
    if _regular(q, t):
        return PrimeTriple(-t.loc, -t.mod, -t.pru)
    return PrimeTriple(max(-q, -t.pru), -t.mod, -t.pru - 1)


def dual(beta: BocksteinFunction) -> BocksteinFunction:
    """Extension function of GG(beta)*, the least class whose smash with beta is >= 0."""
    _check_e(beta)
    return _lift("dual", neg, _dual_at, beta)


# -- sum-product -------------------------------------------------------------------

def _sum_product_at(a, b) -> PrimeTriple:
    (qa, ta), (qb, tb) = a, b
    gmod = dual_add(ta.mod, tb.mod)
    pru = max(dual_add(ta.pru, tb.pru), gmod - 1)
    if _regular(qa, ta) or _regular(qb, tb):
        loc = dual_add(ta.loc, tb.loc)
    else:
        loc = max(pru + 1, dual_add(qa, qb))
    return PrimeTriple(loc, gmod, pru)


def sum_product(alpha: BocksteinFunction, beta: BocksteinFunction) -> BocksteinFunction:
    """The sum-product alpha [+] beta (dimension of a smash of compacta)."""
    _check_e(alpha, beta)
    return _lift("sum_product", dual_add, _sum_product_at, alpha, beta)


def duality_identity_check(alpha: BocksteinFunction, beta: BocksteinFunction) -> bool:
    """Whether alpha [+] beta == (alpha* ^ beta*)*."""
    return sum_product(alpha, beta) == dual(smash(dual(alpha), dual(beta)))


# -- order and lattice ----------------------------------------------------------------

def shift(beta: BocksteinFunction, k: int) -> BocksteinFunction:
    _check_e(beta)
    if isinstance(k, ExtInt):
        k = int(k)
    return _lift(
        "shift",
        lambda q: q + k,
        lambda a: PrimeTriple(a[1].loc + k, a[1].mod + k, a[1].pru + k),
        beta,
    )


def leq(alpha: _PrimePattern, beta: _PrimePattern) -> bool:
    """Pointwise comparison on Q, the default triple and all exceptions."""
    if alpha.kind != beta.kind:
        raise TypeError(f"cannot compare {alpha.kind}-pattern with {beta.kind}-pattern")
    if not alpha.q <= beta.q:
        return False
    for p in {GENERIC} | alpha.primes() | beta.primes():
        ta, tb = alpha.triple(p), beta.triple(p)
        if not (ta.loc <= tb.loc and ta.mod <= tb.mod and ta.pru <= tb.pru):
            return False
    return True


def lattice_min(alpha: BocksteinFunction, beta: BocksteinFunction) -> BocksteinFunction:
    """Meet: the e-function of GG(alpha) + GG(beta).

    d-functions of a direct sum are pointwise minima; the e-function is
    recovered from that.  (Pointwise min of e-functions can break axiom 5.)
    """
    _check_e(alpha, beta)
    da, db = gg_d_function(alpha), gg_d_function(beta)
    meet = _lift(
        "lattice_min",
        min,
        lambda a, b: PrimeTriple(min(a[1].loc, b[1].loc), min(a[1].mod, b[1].mod), min(a[1].pru, b[1].pru)),
        da,
        db,
        cls=DFunction,
    )
    return e_from_d(meet)


def lattice_max(alpha: BocksteinFunction, beta: BocksteinFunction) -> BocksteinFunction:
    """Join, via (alpha* meet beta*)*."""
    return dual(lattice_min(dual(alpha), dual(beta)))


# -- d / e conversion ---------------------------------------------------------------

def _gg_d_at(a) -> PrimeTriple:
    q, t = a
    if _regular(q, t):
        return t
    return PrimeTriple(min(q, t.pru), t.mod, t.pru + 1)


def gg_d_function(alpha: BocksteinFunction) -> DFunction:
    """d-function (H -> dim_H GG(alpha)) of the canonical group of alpha."""
    _check_e(alpha)
    return _lift("gg_d_function", lambda q: q, _gg_d_at, alpha, cls=DFunction)


def _e_from_d_at(a) -> PrimeTriple:
    dq, t = a
    return PrimeTriple(max(dq, t.pru), t.mod, max(t.loc, t.mod - 1, t.pru - 1))


def e_from_d(d: DFunction) -> BocksteinFunction:
    """Recover the e-function from a d-function.

    e(H) is the least m with d(F) <= m + dim_F(H) for every Bockstein F;
    unwinding the trichotomy table gives these prime-local maxima.
    """
    if not isinstance(d, DFunction):
        raise TypeError("e_from_d expects a d-pattern")
    return _lift("e_from_d", lambda q: q, _e_from_d_at, d)


# -- canonical graded group ------------------------------------------------------------

def gg_restrict(alpha: _PrimePattern, primes: Iterable[int]) -> GradedGroup:
    """GG(alpha) restricted to Q and the Bockstein groups at ``primes``.

    +inf values drop their summand; -inf has no finite realization.
    """
    terms = []
    groups = [abelian.Q.summands[0]]
    for p in sorted(set(primes)):
        groups.extend(abelian.bockstein_groups(p))
    for h in groups:
        v = alpha.value(h)
        if v.is_neg_inf:
            raise ValueError(f"value -inf at {h} cannot be realized by a finite graded group")
        if v.is_finite:
            terms.append((int(v), h))
    return GradedGroup(terms)
