"""Extended integers: Z together with +inf and -inf.

Every dimension function takes values here.  Addition follows the
convention ``inf + (-inf) = inf`` in both argument orders, which keeps it
commutative and associative; -inf is read as the infimum of all integers.

Note that negation does not distribute over mixed-infinity sums::

    >>> -(INF + NEG_INF)
    ExtInt('-inf')
    >>> -INF + -NEG_INF
    ExtInt('inf')

so code that needs "dual arithmetic" must negate first, then add.
"""

from __future__ import annotations

import functools
from typing import Union

__all__ = [
    "ExtInt",
    "INF",
    "NEG_INF",
    "ZERO",
    "ext",
    "add",
    "neg",
    "ext_min",
    "ext_max",
    "leq",
    "parse_extint",
]


@functools.total_ordering
class ExtInt:
    """An element of Z u {+inf, -inf}.

    Instances are immutable.  ``ExtInt(3) == 3`` holds, so finite values can
    be compared against plain ints directly.
    """

    __slots__ = ("_n", "_inf")

    def __init__(self, value: Union[int, "ExtInt", str] = 0):
        if isinstance(value, ExtInt):
            n, inf = value._n, value._inf
        elif isinstance(value, bool):
            raise TypeError("bool is not an extended integer")
        elif isinstance(value, int):
            n, inf = value, 0
        elif isinstance(value, str):
            parsed = parse_extint(value)
            n, inf = parsed._n, parsed._inf
        else:
            raise TypeError(f"cannot make ExtInt from {value!r}")
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_inf", inf)

    @classmethod
    def _infinite(cls, sign: int) -> "ExtInt":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_n", 0)
        object.__setattr__(obj, "_inf", sign)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExtInt is immutable")

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def is_pos_inf(self) -> bool:
        return self._inf == 1

    @property
    def is_neg_inf(self) -> bool:
        return self._inf == -1

    def __int__(self) -> int:
        if self._inf:
            raise OverflowError(f"{self} has no integer value")
        return self._n

    def _key(self):
        return (self._inf, self._n)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._n) if not self._inf else hash(("ExtInt", self._inf))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, neg(other))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, neg(self))

    def __str__(self):
        if self._inf == 1:
            return "inf"
        if self._inf == -1:
            return "-inf"
        return str(self._n)

    def __repr__(self):
        return f"ExtInt({str(self)!r})" if self._inf else f"ExtInt({self._n})"

    def __reduce__(self):
        return (ExtInt, (str(self) if self._inf else self._n,))

    def to_json(self):
        """Finite values encode as numbers, infinities as "inf" / "-inf"."""
        return str(self) if self._inf else self._n


INF = ExtInt._infinite(1)
NEG_INF = ExtInt._infinite(-1)
ZERO = ExtInt(0)


def _coerce(value):
    if isinstance(value, ExtInt):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return ExtInt(value)
    return NotImplemented


def ext(value) -> ExtInt:
    """Convert an int, ExtInt, float infinity or string token to ExtInt."""
    if isinstance(value, ExtInt):
        return value
    if isinstance(value, float):
        if value == float("inf"):
            return INF
        if value == float("-inf"):
            return NEG_INF
        if value.is_integer():
            return ExtInt(int(value))
        raise ValueError(f"{value!r} is not an extended integer")
    return ExtInt(value)


def parse_extint(text: str) -> ExtInt:
    token = text.strip().lower()
    if token in ("inf", "+inf", "infinity", "+infinity", "oo", "+oo"):
        return INF
    if token in ("-inf", "-infinity", "-oo"):
        return NEG_INF
    try:
        return ExtInt(int(token))
    except ValueError:
        raise ValueError(f"not an extended integer: {text!r}") from None


def add(a: ExtInt, b: ExtInt) -> ExtInt:
    a, b = ext(a), ext(b)
    if a._inf == 1 or b._inf == 1:
        return INF
    if a._inf == -1 or b._inf == -1:
        return NEG_INF
    return ExtInt(a._n + b._n)


def neg(a: ExtInt) -> ExtInt:
    a = ext(a)
    if a._inf == 1:
        return NEG_INF
    if a._inf == -1:
        return INF
    return ExtInt(-a._n)


def ext_min(*values) -> ExtInt:
    return min(ext(v) for v in values)


def ext_max(*values) -> ExtInt:
    return max(ext(v) for v in values)


def leq(a, b) -> bool:
    return ext(a) <= ext(b)
