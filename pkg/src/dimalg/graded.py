"""Finitely supported graded groups and their smash product.

A graded group maps integer degrees to finite sums of basic groups.  The
smash product places tensor products in degree ``j + k`` and torsion
products one degree higher::

    (A ^ B)(n) = sum_k A(k) (x) B(n-k)  +  sum_k Tor(A(k), B(n-k-1))

This is the concrete side of the library: the brute-force oracle computes
everything from these definitions.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Dict, Iterable, Mapping, Tuple

from . import abelian
from .abelian import Group, GroupSyntaxError, parse_group
from .extnum import INF, ExtInt, ext

__all__ = [
    "GradedGroup",
    "ZERO_GRADED",
    "graded",
    "direct_sum",
    "suspend",
    "smash",
    "dim_coeff",
    "cin",
    "parse_graded",
]


class GradedGroup:
    """Immutable mapping degree -> nonzero :class:`Group` with finite support."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | Iterable[Tuple[int, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[int, list] = defaultdict(list)
        for degree, group in items:
            if isinstance(degree, bool) or not isinstance(degree, int):
                degree = int(ext(degree))
            acc[degree].append(abelian._as_group(group))
        normal = []
        for degree in sorted(acc):
            g = Group(s for part in acc[degree] for s in part)
            if not g.is_zero():
                normal.append((degree, g))
        object.__setattr__(self, "_terms", tuple(normal))

    def __setattr__(self, name, value):
        raise AttributeError("GradedGroup is immutable")

    @property
    def terms(self) -> Dict[int, Group]:
        return dict(self._terms)

    def __getitem__(self, degree: int) -> Group:
        return dict(self._terms).get(degree, abelian.ZERO_GROUP)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def primes(self) -> frozenset:
        out = set()
        for _, g in self._terms:
            out |= g.primes()
        return frozenset(out)

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        return direct_sum(self, other)

    def __xor__(self, other: "GradedGroup") -> "GradedGroup":
        return smash(self, other)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for degree, g in self._terms:
            inner = str(g)
            parts.append(f"S^{degree}({inner})")
        return " + ".join(parts)

    def __repr__(self):
        return f"GradedGroup({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": {str(d): str(g) for d, g in self._terms}}

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedGroup":
        terms = data["terms"] if "terms" in data else data
        return cls({int(d): parse_group(g) for d, g in terms.items()})


ZERO_GRADED = GradedGroup()


def graded(group, degree: int = 0) -> GradedGroup:
    """The group ``group`` concentrated in ``degree``."""
    return GradedGroup({degree: abelian._as_group(group)})


def direct_sum(*parts: GradedGroup) -> GradedGroup:
    return GradedGroup(item for part in parts for item in part.items())


def suspend(a: GradedGroup, k) -> GradedGroup:
    k = ext(k)
    if k.is_neg_inf:
        raise ValueError("suspension by -inf has infinite support and is not representable")
    if k.is_pos_inf:
        return ZERO_GRADED
    shift = int(k)
    return GradedGroup((d + shift, g) for d, g in a.items())


def smash(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    out = []
    for j, ga in a.items():
        for k, gb in b.items():
            out.append((j + k, abelian.tensor(ga, gb)))
            out.append((j + k + 1, abelian.tor(ga, gb)))
    return GradedGroup(out)


def cin(a: GradedGroup) -> ExtInt:
    """Connectivity index: the least degree carrying a nonzero group."""
    degrees = a.degrees()
    return ExtInt(degrees[0]) if degrees else INF


def dim_coeff(a: GradedGroup, g) -> ExtInt:
    """Homological dimension of ``a`` with coefficients in the group ``g``.

    With finite support the supremum of vanishing ranges is simply the
    lowest nonzero degree of ``a ^ g``.
    """
    g = abelian._as_group(g)
    lowest = None
    for degree, ga in a.items():
        if lowest is not None and degree >= lowest:
            break
        if not abelian.tensor(ga, g).is_zero():
            lowest = degree
        elif not abelian.tor(ga, g).is_zero():
            lowest = degree + 1 if lowest is None else min(lowest, degree + 1)
    return INF if lowest is None else ExtInt(lowest)


_SUSP_RE = re.compile(r"\s*S\^\s*(-?\d+)\s*\(")


def parse_graded(text: str) -> GradedGroup:
    """Parse ``"S^2(Z/3) + S^0(Q + Z)"``; bare group literals sit in degree 0."""
    items = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _SUSP_RE.match(text, pos)
        if m:
            # Z_(p) literals contain parentheses of their own
            depth, i = 1, m.end()
            while i < n and depth:
                if text[i] == "(":
                    depth += 1
                elif text[i] == ")":
                    depth -= 1
                i += 1
            if depth:
                raise GroupSyntaxError(f"unbalanced parentheses in {text!r}")
            close = i - 1
            items.append((int(m.group(1)), parse_group(text[m.end():close])))
            pos = i
        else:
            g, used = abelian.parse_atom(text[pos:])
            items.append((0, abelian.Group([g])))
            pos += used
        while pos < n and text[pos].isspace():
            pos += 1
        if pos < n:
            if text[pos] != "+":
                raise GroupSyntaxError(f"unexpected {text[pos]!r} in graded literal {text!r}")
            pos += 1
    return GradedGroup(items)
