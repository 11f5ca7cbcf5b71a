"""Computable abelian groups: finite direct sums of six basic building blocks.

The basic groups are 0, Z, Q, Z/p^k, Z/p^inf (Pruefer) and Z_(p) (Z localized
at p).  Tensor and torsion products are given by closed tables on pairs of
basic groups and extended bilinearly to finite sums.  Every table is uniform
in the prime, which is what lets a single "generic" prime stand in for all
primes that do not occur in a given input.

>>> g = parse_group("Z/9 + Z/3^inf")
>>> str(tensor(g, parse_group("Z/27")))
'Z/9'
>>> dim_group(parse_group("Z/3"), parse_group("Z/3^inf"))
ExtInt(1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional, Tuple

from sympy import factorint, isprime, nextprime

from .extnum import INF, ExtInt

__all__ = [
    "BasicGroup",
    "Group",
    "BocksteinBasis",
    "EMPTY_BASIS",
    "ZERO_GROUP",
    "Z",
    "Q",
    "cyclic",
    "prufer",
    "localized",
    "bockstein_groups",
    "parse_group",
    "tensor",
    "tor",
    "is_p_divisible",
    "torsion_part",
    "torsion_free_quotient",
    "p_torsion",
    "dim_group",
    "bockstein_basis",
    "fresh_prime",
    "GroupSyntaxError",
]

# kind tags
ZERO_K, Z_K, Q_K, CYC_K, PRU_K, LOC_K = "0", "Z", "Q", "cyc", "pru", "loc"
_KIND_ORDER = {ZERO_K: 0, Z_K: 1, Q_K: 2, LOC_K: 3, CYC_K: 4, PRU_K: 5}


class GroupSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class BasicGroup:
    """One of 0, Z, Q, Z/p^k, Z/p^inf, Z_(p).

    ``p`` is set for the last three kinds, ``k`` only for cyclic groups.
    """

    kind: str
    p: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in (CYC_K, PRU_K, LOC_K):
            if self.p is None or not isprime(self.p):
                raise ValueError(f"{self.p!r} is not a prime")
        elif self.p is not None:
            raise ValueError(f"{self.kind} takes no prime")
        if self.kind == CYC_K:
            if self.k is None or self.k < 1:
                raise ValueError("cyclic exponent must be >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.kind} takes no exponent")

    @property
    def is_torsion(self) -> bool:
        return self.kind in (CYC_K, PRU_K)

    @property
    def is_torsion_free(self) -> bool:
        return self.kind in (Z_K, Q_K, LOC_K)

    @property
    def is_bockstein(self) -> bool:
        """Q, Z/p, Z/p^inf and Z_(p) are the Bockstein groups."""
        return self.kind in (Q_K, PRU_K, LOC_K) or (self.kind == CYC_K and self.k == 1)

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.p or 0, self.k or 0)

    def __str__(self):
        if self.kind == CYC_K:
            return f"Z/{self.p ** self.k}"
        if self.kind == PRU_K:
            return f"Z/{self.p}^inf"
        if self.kind == LOC_K:
            return f"Z_({self.p})"
        return self.kind


def cyclic(p: int, k: int = 1) -> BasicGroup:
    return BasicGroup(CYC_K, p, k)


def prufer(p: int) -> BasicGroup:
    return BasicGroup(PRU_K, p)


def localized(p: int) -> BasicGroup:
    return BasicGroup(LOC_K, p)


_ZERO_B = BasicGroup(ZERO_K)
_Z_B = BasicGroup(Z_K)
_Q_B = BasicGroup(Q_K)


class Group:
    """A finite direct sum of basic groups, stored as a sorted multiset.

    Zero summands are dropped on construction, so the empty sum is the zero
    group and equality is isomorphism of the represented groups.
    """

    __slots__ = ("summands",)

    def __init__(self, summands: Iterable[BasicGroup] = ()):
        items = []
        for s in summands:
            if isinstance(s, Group):
                items.extend(s.summands)
            elif s.kind != ZERO_K:
                items.append(s)
        items.sort(key=BasicGroup.sort_key)
        object.__setattr__(self, "summands", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("Group is immutable")

    def __iter__(self) -> Iterator[BasicGroup]:
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    def __bool__(self):
        return bool(self.summands)

    def is_zero(self) -> bool:
        return not self.summands

    def __add__(self, other: "Group") -> "Group":
        return Group(self.summands + _as_group(other).summands)

    def __eq__(self, other):
        if isinstance(other, BasicGroup):
            other = Group([other])
        if not isinstance(other, Group):
            return NotImplemented
        return self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def __str__(self):
        if not self.summands:
            return "0"
        return " + ".join(str(s) for s in self.summands)

    def __repr__(self):
        return f"Group({str(self)!r})"

    def primes(self) -> frozenset:
        return frozenset(s.p for s in self.summands if s.p is not None)


ZERO_GROUP = Group()
Z = Group([_Z_B])
Q = Group([_Q_B])


def _as_group(g) -> Group:
    if isinstance(g, Group):
        return g
    if isinstance(g, BasicGroup):
        return Group([g])
    if isinstance(g, str):
        return parse_group(g)
    raise TypeError(f"not a group: {g!r}")


def bockstein_groups(p: int) -> Tuple[BasicGroup, BasicGroup, BasicGroup]:
    """The three Bockstein groups at ``p``: (Z_(p), Z/p, Z/p^inf)."""
    return localized(p), cyclic(p, 1), prufer(p)


# -- literals ---------------------------------------------------------------

_ATOM_RE = re.compile(
    r"""\s*(?:
        (?P<zero>0)(?![\d/^(])
      | Z_\(\s*(?P<loc>\d+)\s*\)
      | Z/(?P<pru>\d+)\s*\^\s*(?:inf|oo)
      | Z/(?P<cyc>\d+)(?:\s*\^\s*(?P<exp>\d+))?
      | (?P<z>Z)(?![_/\w])
      | (?P<q>Q)(?!\w)
    )\s*""",
    re.VERBOSE,
)


def _prime_power(n: int) -> Tuple[int, int]:
    f = factorint(n)
    if len(f) != 1:
        raise GroupSyntaxError(f"Z/{n}: only prime-power cyclic groups are basic")
    (p, k), = f.items()
    return p, k


def parse_atom(text: str) -> Tuple[BasicGroup, int]:
    """Parse one basic-group literal at the start of ``text``.

    Returns the group and the number of characters consumed.
    """
    m = _ATOM_RE.match(text)
    if not m:
        raise GroupSyntaxError(f"expected a group literal at {text[:20]!r}")
    if m.group("zero"):
        g = _ZERO_B
    elif m.group("loc"):
        p = int(m.group("loc"))
        if not isprime(p):
            raise GroupSyntaxError(f"Z_({p}): {p} is not prime")
        g = localized(p)
    elif m.group("pru"):
        p = int(m.group("pru"))
        if not isprime(p):
            raise GroupSyntaxError(f"Z/{p}^inf: {p} is not prime")
        g = prufer(p)
    elif m.group("cyc"):
        n = int(m.group("cyc"))
        if n < 2:
            raise GroupSyntaxError(f"Z/{n} is not a basic group")
        p, k = _prime_power(n)
        if m.group("exp"):
            k *= int(m.group("exp"))
        g = cyclic(p, k)
    elif m.group("z"):
        g = _Z_B
    else:
        g = _Q_B
    return g, m.end()


def parse_group(text: str) -> Group:
    """Parse a literal such as ``"Z + Z/9 + Z/3^inf + Z_(5) + Q"``."""
    items = []
    pos = 0
    while True:
        g, used = parse_atom(text[pos:])
        items.append(g)
        pos += used
        if pos >= len(text):
            break
        if text[pos] != "+":
            raise GroupSyntaxError(f"unexpected {text[pos]!r} in group literal {text!r}")
        pos += 1
    return Group(items)


# -- tensor / Tor tables ------------------------------------------------------

@lru_cache(maxsize=None)
def _tensor_basic(a: BasicGroup, b: BasicGroup) -> Tuple[BasicGroup, ...]:
    if a.sort_key() > b.sort_key():
        a, b = b, a
    ka, kb = a.kind, b.kind
    if ka == ZERO_K:
        return ()
    if ka == Z_K:
        return (b,)
    if ka == Q_K:
        return (_Q_B,) if kb in (Q_K, LOC_K) else ()
    if ka == LOC_K:
        if kb == LOC_K:
            return (a,) if a.p == b.p else (_Q_B,)
        # torsion b: survives only at the same prime
        return (b,) if a.p == b.p else ()
    if ka == CYC_K:
        if a.p != b.p:
            return ()
        if kb == CYC_K:
            return (cyclic(a.p, min(a.k, b.k)),)
        return ()  # Z/p^k (x) Z/p^inf = 0
    # both Pruefer
    return ()


@lru_cache(maxsize=None)
def _tor_basic(a: BasicGroup, b: BasicGroup) -> Tuple[BasicGroup, ...]:
    if not (a.is_torsion and b.is_torsion) or a.p != b.p:
        return ()
    if a.kind == CYC_K and b.kind == CYC_K:
        return (cyclic(a.p, min(a.k, b.k)),)
    if a.kind == CYC_K:
        return (a,)
    if b.kind == CYC_K:
        return (b,)
    return (a,)


def tensor(f, g) -> Group:
    f, g = _as_group(f), _as_group(g)
    return Group(s for a, b in product(f, g) for s in _tensor_basic(a, b))


def tor(f, g) -> Group:
    f, g = _as_group(f), _as_group(g)
    return Group(s for a, b in product(f, g) for s in _tor_basic(a, b))


# -- divisibility and torsion -------------------------------------------------

def _basic_p_divisible(g: BasicGroup, p: int) -> bool:
    if g.kind in (ZERO_K, Q_K):
        return True
    if g.kind == Z_K:
        return False
    if g.kind == PRU_K:
        return True
    # Z/q^k and Z_(q) are p-divisible exactly when q != p
    return g.p != p


def is_p_divisible(g, p: int) -> bool:
    return all(_basic_p_divisible(s, p) for s in _as_group(g))


def torsion_part(g) -> Group:
    return Group(s for s in _as_group(g) if s.is_torsion)


def torsion_free_quotient(g) -> Group:
    return Group(s for s in _as_group(g) if s.is_torsion_free)


def p_torsion(g, p: int) -> Group:
    return Group(s for s in _as_group(g) if s.is_torsion and s.p == p)


def dim_group(g, f) -> ExtInt:
    """Homological dimension of the group ``f`` with coefficients in ``g``.

    Only three values occur: 0 when g (x) f != 0, 1 when the tensor product
    vanishes but Tor does not, and +inf when both vanish.  The value is
    symmetric in its arguments.
    """
    g, f = _as_group(g), _as_group(f)
    if not tensor(g, f).is_zero():
        return ExtInt(0)
    if not tor(g, f).is_zero():
        return ExtInt(1)
    return INF


def fresh_prime(exclude: Iterable[int] = ()) -> int:
    """Smallest prime not in ``exclude``."""
    taken = set(exclude)
    p = 2
    while p in taken:
        p = nextprime(p)
    return p


# -- Bockstein basis -----------------------------------------------------------

Triple = Tuple[bool, bool, bool]


@dataclass(frozen=True)
class BocksteinBasis:
    """The Bockstein basis of a group as a finite pattern over primes.

    ``default`` gives membership of (Z_(p), Z/p, Z/p^inf) at every prime not
    listed in ``exceptions``.  The zero group has the empty basis.
    """

    has_q: bool
    default: Triple
    exceptions: Tuple[Tuple[int, Triple], ...] = ()

    def __post_init__(self):
        ex = tuple(sorted((p, t) for p, t in dict(self.exceptions).items() if t != self.default))
        object.__setattr__(self, "exceptions", ex)

    def triple(self, p: int) -> Triple:
        return dict(self.exceptions).get(p, self.default)

    def __contains__(self, h: BasicGroup) -> bool:
        if h.kind == Q_K:
            return self.has_q
        if not h.is_bockstein:
            return False
        loc, mod, pru = self.triple(h.p)
        return {LOC_K: loc, CYC_K: mod, PRU_K: pru}[h.kind]

    def is_empty(self) -> bool:
        return not self.has_q and not any(self.default) and not self.exceptions

    def members(self, primes: Iterable[int]) -> list:
        """Basis elements over the given primes (the full basis is infinite)."""
        out = [_Q_B] if self.has_q else []
        for p in sorted(set(primes)):
            out.extend(h for h, flag in zip(bockstein_groups(p), self.triple(p)) if flag)
        return out

    def primes(self) -> frozenset:
        return frozenset(p for p, _ in self.exceptions)

    def __str__(self):
        if self.is_empty():
            return "{}"
        flags = lambda t: "(" + ",".join("T" if b else "F" for b in t) + ")"
        parts = [f"Q={'T' if self.has_q else 'F'}", f"default={flags(self.default)}"]
        parts += [f"p={p}:{flags(t)}" for p, t in self.exceptions]
        return "{" + ", ".join(parts) + "}"


EMPTY_BASIS = BocksteinBasis(False, (False, False, False))


def _basis_triple(g: Group, p: int) -> Triple:
    loc = not is_p_divisible(torsion_free_quotient(g), p)
    mod = not is_p_divisible(g, p)
    pru = loc or not p_torsion(g, p).is_zero()
    return loc, mod, pru


def bockstein_basis(g) -> BocksteinBasis:
    """Bockstein basis by the four divisibility / torsion criteria.

    Q is in the basis iff g has a non-torsion part; Z_(p) iff g/Tor(g) is not
    p-divisible; Z/p iff g is not p-divisible; Z/p^inf iff Z_(p) is or the
    p-torsion is nonzero.  Primes absent from ``g`` all behave like one
    fresh prime, which supplies the default triple.
    """
    g = _as_group(g)
    if g.is_zero():
        return EMPTY_BASIS
    primes = g.primes()
    default = _basis_triple(g, fresh_prime(primes))
    return BocksteinBasis(
        has_q=not torsion_free_quotient(g).is_zero(),
        default=default,
        exceptions=tuple((p, _basis_triple(g, p)) for p in primes),
    )
