"""Typed evaluation of parsed expressions.

Every value carries a kind: group, graded, efun, dfun, profile, bool, extint,
basis or moore.  Operators dispatch on kinds; a mismatch is a :class:`KindError`
and never falls through to a library call.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Mapping

from .. import abelian, bockstein, dimtheory, graded, oracle
from ..abelian import Group
from ..bockstein import BocksteinFunction, DFunction
from ..dimtheory import CompactumProfile
from ..extnum import ExtInt, ext, ext_max, ext_min
from ..graded import GradedGroup
from . import syntax
from .syntax import BinOp, Call, Dual, FunLit, GroupLit, Name, Num, Shift

__all__ = ["Value", "KindError", "EvalError", "evaluate", "evaluate_text", "load_binding", "render_text", "render_json"]

KINDS = ("group", "graded", "efun", "dfun", "profile", "bool", "extint", "basis", "moore")


@dataclass(frozen=True)
class Value:
    kind: str
    payload: Any


class KindError(TypeError):
    """Operator applied to operands of the wrong kind (or unbound name)."""


class EvalError(Exception):
    """A domain error raised while evaluating, with the failing subexpression."""

    def __init__(self, cause: Exception, node):
        self.cause = cause
        self.where = syntax.to_source(node)
        super().__init__(f"{cause} (in {self.where})")


# -- conversions -------------------------------------------------------------------

def _as_graded(v: Value) -> GradedGroup:
    if v.kind == "graded":
        return v.payload
    if v.kind == "group":
        return graded.graded(v.payload)
    raise KindError(f"expected a graded group, got {v.kind}")


def _as_group(v: Value) -> Group:
    if v.kind == "group":
        return v.payload
    if v.kind == "extint" and v.payload == 0:
        return abelian.ZERO_GROUP
    raise KindError(f"expected a group, got {v.kind}")


def _as_int(v: Value) -> int:
    if v.kind != "extint" or not v.payload.is_finite:
        raise KindError(f"expected a finite integer, got {_describe(v)}")
    return int(v.payload)


def _as_efun(v: Value) -> BocksteinFunction:
    if v.kind != "efun":
        raise KindError(f"expected a Bockstein function, got {v.kind}")
    return v.payload


def _describe(v: Value) -> str:
    return f"{v.kind} {render_text(v)}"


def _kinds(*vals: Value) -> tuple:
    return tuple(v.kind for v in vals)


# -- operators -----------------------------------------------------------------------

def _plus(a: Value, b: Value) -> Value:
    ks = _kinds(a, b)
    if ks == ("group", "group"):
        return Value("group", a.payload + b.payload)
    if set(ks) <= {"group", "graded"}:
        return Value("graded", graded.direct_sum(_as_graded(a), _as_graded(b)))
    if ks == ("efun", "efun"):
        return Value("efun", bockstein.lattice_min(a.payload, b.payload))
    if ks == ("extint", "extint"):
        return Value("extint", a.payload + b.payload)
    raise KindError(f"'+' is not defined for {ks[0]} and {ks[1]}")


def _smash(a: Value, b: Value) -> Value:
    ks = _kinds(a, b)
    if set(ks) <= {"group", "graded"}:
        return Value("graded", graded.smash(_as_graded(a), _as_graded(b)))
    if ks == ("efun", "efun"):
        return Value("efun", bockstein.smash(a.payload, b.payload))
    if ks == ("profile", "profile"):
        return Value("profile", dimtheory.dim_of_smash(a.payload, b.payload))
    raise KindError(f"'^' is not defined for {ks[0]} and {ks[1]}")


def _sum_product(a: Value, b: Value) -> Value:
    ks = _kinds(a, b)
    if ks == ("efun", "efun"):
        return Value("efun", bockstein.sum_product(a.payload, b.payload))
    if ks == ("profile", "profile"):
        return Value("profile", CompactumProfile(bockstein.sum_product(a.payload.d, b.payload.d)))
    raise KindError(f"'[+]' is not defined for {ks[0]} and {ks[1]}")


def _equal(a: Value, b: Value) -> Value:
    if a.kind != b.kind:
        raise KindError(f"cannot compare {a.kind} with {b.kind}")
    return Value("bool", a.payload == b.payload)


def _leq(a: Value, b: Value) -> Value:
    ks = _kinds(a, b)
    if ks == ("extint", "extint"):
        return Value("bool", a.payload <= b.payload)
    if ks in (("efun", "efun"), ("dfun", "dfun")):
        return Value("bool", bockstein.leq(a.payload, b.payload))
    if ks == ("profile", "profile"):
        return Value("bool", bockstein.leq(a.payload.d, b.payload.d))
    raise KindError(f"'<=' is not defined for {ks[0]} and {ks[1]}")


_BINARY: Dict[str, Callable[[Value, Value], Value]] = {
    "+": _plus,
    "^": _smash,
    "[+]": _sum_product,
    "==": _equal,
    "<=": _leq,
}


def _dual(v: Value) -> Value:
    return Value("efun", bockstein.dual(_as_efun(v)))


def _shift(k: ExtInt, v: Value) -> Value:
    if v.kind == "group":
        if not k.is_finite:
            return Value("graded", graded.suspend(graded.graded(v.payload), k))
        return Value("graded", graded.graded(v.payload, int(k)))
    if v.kind == "graded":
        return Value("graded", graded.suspend(v.payload, k))
    if v.kind == "efun":
        if not k.is_finite:
            raise KindError("functions shift by finite amounts only")
        return Value("efun", bockstein.shift(v.payload, int(k)))
    raise KindError(f"S^k is not defined for {v.kind}")


# -- named functions ------------------------------------------------------------------

def _f_dim(x: Value, coeff: Value) -> Value:
    if x.kind == "profile":
        if coeff.kind == "graded":
            return Value("extint", dimtheory.dim_graded_coefficients(x.payload, coeff.payload))
        return Value("extint", dimtheory.dim_with_coefficients(x.payload, _as_group(coeff)))
    if x.kind in ("graded", "group"):
        return Value("extint", graded.dim_coeff(_as_graded(x), _as_group(coeff)))
    if x.kind in ("efun", "dfun"):
        return Value("extint", bockstein.evaluate(x.payload, _as_group(coeff)))
    raise KindError(f"dim is not defined for {x.kind}")


def _f_minmax(which: str):
    def run(a: Value, b: Value) -> Value:
        ks = _kinds(a, b)
        if ks == ("efun", "efun"):
            op = bockstein.lattice_min if which == "min" else bockstein.lattice_max
            return Value("efun", op(a.payload, b.payload))
        if ks == ("extint", "extint"):
            op = ext_min if which == "min" else ext_max
            return Value("extint", op(a.payload, b.payload))
        raise KindError(f"{which} is not defined for {ks[0]} and {ks[1]}")
    return run


def _fun_of(x: Value) -> BocksteinFunction:
    return x.payload.d if x.kind == "profile" else _as_efun(x)


def _f_moore(x: Value) -> Value:
    return Value("moore", dimtheory.moore_space_spec(_fun_of(x)))


def _f_sp_ae(x: Value, k: Value) -> Value:
    if x.kind != "profile":
        raise KindError(f"sp_ae expects a profile first, got {x.kind}")
    if k.kind in ("graded", "group"):
        e_k = oracle.e_function(_as_graded(k))
    else:
        e_k = _as_efun(k)
    return Value("bool", dimtheory.sp_absolute_extensor(x.payload, e_k))


def _f_cin(x: Value) -> Value:
    return Value("extint", graded.cin(_as_graded(x)))


def _f_profile(x: Value) -> Value:
    if x.kind == "profile":
        return x
    return Value("profile", CompactumProfile(_as_efun(x)))


def _f_efun(x: Value) -> Value:
    if x.kind == "profile":
        return Value("efun", x.payload.d)
    if x.kind in ("graded", "group"):
        return Value("efun", oracle.e_function(_as_graded(x)))
    return Value("efun", _as_efun(x))


def _f_d(x: Value) -> Value:
    if x.kind in ("graded", "group"):
        return Value("dfun", oracle.d_function(_as_graded(x)))
    raise KindError(f"d expects a graded group, got {x.kind}")


_FUNCTIONS: Dict[str, tuple] = {
    # name: (positional arity, keyword names, implementation)
    "dual": (1, (), _dual),
    "min": (2, (), _f_minmax("min")),
    "max": (2, (), _f_minmax("max")),
    "dim": (1, ("coeff",), _f_dim),
    "sigma": (1, (), lambda g: Value("basis", abelian.bockstein_basis(_as_group(g)))),
    "testspace": (2, (), lambda g, n: Value("profile", dimtheory.test_space(_as_group(g), _as_int(n)))),
    "moore": (1, (), _f_moore),
    "sp_ae": (2, (), _f_sp_ae),
    "leq": (2, (), _leq),
    "cin": (1, (), _f_cin),
    "profile": (1, (), _f_profile),
    "e": (1, (), _f_efun),
    "d": (1, (), _f_d),
    "dconv": (1, (), lambda a: Value("dfun", bockstein.gg_d_function(_as_efun(a)))),
    "const": (1, (), lambda k: Value("efun", bockstein.constant(k.payload if k.kind == "extint" else _as_int(k)))),
    "realizable": (2, (), lambda a, n: Value("bool", dimtheory.realization_precondition(_fun_of(a), _as_int(n)))),
}

FUNCTION_NAMES = tuple(sorted(_FUNCTIONS))


def _funlit(node: FunLit) -> Value:
    ex = {p: t for p, t in node.exceptions}
    if node.kind == "d":
        return Value("dfun", DFunction(node.q, node.default, ex))
    f = BocksteinFunction(node.q, node.default, ex)
    if node.kind == "X":
        return Value("profile", CompactumProfile(f))
    return Value("efun", f)


_DOMAIN_ERRORS = (ValueError, ArithmeticError, bockstein.ClosureError, dimtheory.DiscrepancyError)


def evaluate(node, env: Mapping[str, Value] = None) -> Value:
    env = env or {}
    try:
        return _eval(node, env)
    except (KindError, EvalError):
        raise
    except _DOMAIN_ERRORS as err:
        raise EvalError(err, node) from err


def _eval(node, env) -> Value:
    if isinstance(node, Num):
        return Value("extint", ext(node.text))
    if isinstance(node, GroupLit):
        return Value("group", abelian.parse_group(node.text))
    if isinstance(node, FunLit):
        return _funlit(node)
    if isinstance(node, Name):
        if node.ident not in env:
            raise KindError(f"unbound name {node.ident!r}")
        return env[node.ident]
    if isinstance(node, Dual):
        return _dual(evaluate(node.arg, env))
    if isinstance(node, Shift):
        return _shift(ext(node.k), evaluate(node.arg, env))
    if isinstance(node, BinOp):
        return _BINARY[node.op](evaluate(node.left, env), evaluate(node.right, env))
    if isinstance(node, Call):
        if node.name not in _FUNCTIONS:
            raise KindError(f"unknown function {node.name!r}; known: {', '.join(FUNCTION_NAMES)}")
        arity, keywords, impl = _FUNCTIONS[node.name]
        given = dict(node.kwargs)
        if len(node.args) != arity or set(given) != set(keywords):
            sig = ", ".join(["x"] * arity) + ("; " + ", ".join(f"{k}=..." for k in keywords) if keywords else "")
            raise KindError(f"{node.name} takes ({sig})")
        args = [evaluate(a, env) for a in node.args]
        args += [evaluate(given[k], env) for k in keywords]
        return impl(*args)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str, env: Mapping[str, Value] = None) -> Value:
    return evaluate(syntax.parse(text), env)


# -- bindings and output -----------------------------------------------------------------

def value_from_json(data) -> Value:
    if not isinstance(data, Mapping):
        raise ValueError("a binding file must hold a JSON object")
    if "terms" in data:
        return Value("graded", GradedGroup.from_json(data))
    if "group" in data:
        return Value("group", abelian.parse_group(data["group"]))
    kind = data.get("kind", "e")
    body = {k: v for k, v in data.items() if k != "kind"}
    if kind == "d":
        return Value("dfun", DFunction.from_json(body))
    if kind == "d_X":
        return Value("profile", CompactumProfile(bockstein.validate(body)))
    if kind != "e":
        raise ValueError(f"unknown pattern kind {kind!r}")
    return Value("efun", bockstein.validate(body))


def load_binding(path) -> Value:
    return value_from_json(json.loads(Path(path).read_text()))


def _flags(t) -> str:
    return "(" + ",".join("T" if b else "F" for b in t) + ")"


def render_text(v: Value) -> str:
    if v.kind == "bool":
        return "true" if v.payload else "false"
    if v.kind == "dfun":
        return "d" + str(v.payload)
    if v.kind == "profile":
        return "X" + str(v.payload.d)
    if v.kind == "basis":
        b = v.payload
        if b.is_empty():
            return "empty"
        parts = [f"hasQ={'true' if b.has_q else 'false'}", f"default={_flags(b.default)}"]
        parts += [f"p={p}:{_flags(t)}" for p, t in b.exceptions]
        return ", ".join(parts)
    return str(v.payload)


def _basis_json(b) -> dict:
    tri = lambda t: dict(zip(("loc", "mod", "pru"), t))
    return {"hasQ": b.has_q, "default": tri(b.default), "exceptions": {str(p): tri(t) for p, t in b.exceptions}}


def render_json(v: Value) -> dict:
    if v.kind in ("efun", "dfun", "graded", "moore"):
        body = v.payload.to_json()
    elif v.kind == "profile":
        body = v.payload.to_json()
    elif v.kind == "extint":
        body = v.payload.to_json()
    elif v.kind == "basis":
        body = _basis_json(v.payload)
    elif v.kind == "group":
        body = str(v.payload)
    else:
        body = v.payload
    return {"kind": v.kind, "value": body}
