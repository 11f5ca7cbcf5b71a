"""``dimalg`` command line.

Exit codes: 0 success, 1 domain or validation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .. import abelian, bockstein, dimtheory, oracle
from . import syntax
from .evaluate import EvalError, KindError, Value, evaluate, load_binding, render_json, render_text

OK, DOMAIN, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def _primes(text: str) -> tuple:
    try:
        ps = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated prime list: {text!r}")
    bad = [p for p in ps if not abelian.isprime(p)]
    if bad or not ps:
        raise argparse.ArgumentTypeError(f"not primes: {bad or text!r}")
    return ps


def _default_seed() -> int:
    raw = os.environ.get("DIMALG_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"DIMALG_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = _Parser(prog="dimalg", description="Dimension algebra of graded groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[fmt], help="evaluate an expression")
    e.add_argument("expr")
    e.add_argument("--bind", action="append", default=[], metavar="NAME=FILE",
                   help="bind a name to a JSON file (function, profile, graded group)")

    v = sub.add_parser("validate", parents=[fmt], help="check a Bockstein function file")
    v.add_argument("file")

    r = sub.add_parser("verify", parents=[fmt], help="run a seeded oracle corpus")
    r.add_argument("what", choices=oracle.VERIFY_KINDS)
    r.add_argument("--seed", type=int, default=None, help="defaults to $DIMALG_SEED or 0")
    r.add_argument("--cases", type=int, default=100)
    r.add_argument("--primes", type=_primes, default=(2, 3, 5, 7))
    r.add_argument("--infinite", action="store_true", help="draw values from [-4,4] and +-inf")

    t = sub.add_parser("testspace", parents=[fmt], help="profile of a test compactum")
    t.add_argument("group")
    t.add_argument("n", type=int)

    s = sub.add_parser("sigma", parents=[fmt], help="Bockstein basis of a group")
    s.add_argument("group")
    return p


def _emit(out, args, value: Value):
    if args.format == "json":
        out.write(json.dumps(render_json(value), sort_keys=True) + "\n")
    else:
        out.write(render_text(value) + "\n")


def _cmd_eval(args, out) -> int:
    env = {}
    for item in args.bind:
        name, sep, path = item.partition("=")
        if not sep or not name.isidentifier():
            raise _UsageError(f"--bind expects NAME=FILE, got {item!r}")
        try:
            env[name] = load_binding(path)
        except OSError as err:
            raise _UsageError(f"cannot read {path}: {err.strerror}")
    node = syntax.parse(args.expr)
    _emit(out, args, evaluate(node, env))
    return OK


def _cmd_validate(args, out) -> int:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except OSError as err:
        raise _UsageError(f"cannot read {args.file}: {err.strerror}")
    except json.JSONDecodeError as err:
        raise _UsageError(f"{args.file}: invalid JSON ({err.msg} at line {err.lineno})")
    body = {k: v for k, v in data.items() if k != "kind"} if isinstance(data, dict) else data
    try:
        f = bockstein.validate(body)
        if isinstance(data, dict) and data.get("kind") == "d_X":
            dimtheory.CompactumProfile(f)
    except bockstein.BocksteinAxiomError as err:
        if args.format == "json":
            viol = [{"prime": p, "axiom": a, "law": bockstein.AXIOMS[a]} for p, a in err.violations]
            out.write(json.dumps({"valid": False, "violations": viol}, sort_keys=True) + "\n")
        else:
            out.write(f"invalid: {', '.join(f'(p={p}, axiom {a})' for p, a in err.violations)}\n")
        return DOMAIN
    except (TypeError, KeyError, dimtheory.ProfileError) as err:
        out.write(f"invalid: {err}\n")
        return DOMAIN
    if args.format == "json":
        out.write(json.dumps({"valid": True, "function": f.to_json()}, sort_keys=True) + "\n")
    else:
        out.write(f"valid: {f}\n")
    return OK


def _cmd_verify(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.cases < 0:
        raise _UsageError("--cases must be non-negative")
    reports = oracle.run_corpus(args.what, seed, args.cases, args.primes, args.infinite)
    passed = sum(r.passed for r in reports)
    failures = [r for r in reports if not r.passed]
    if args.format == "json":
        doc = {"check": args.what, "seed": seed, "cases": args.cases, "passed": passed,
               "failures": [r.to_json() for r in failures]}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(f"{args.what}: {passed}/{args.cases} pass (seed {seed})\n")
        for r in failures[:5]:
            out.write(f"  FAIL {r.case}: first divergence {r.first_divergence}\n")
    return OK if not failures else DOMAIN


def _cmd_testspace(args, out) -> int:
    g = abelian.parse_group(args.group)
    _emit(out, args, Value("profile", dimtheory.test_space(g, args.n)))
    return OK


def _cmd_sigma(args, out) -> int:
    g = abelian.parse_group(args.group)
    _emit(out, args, Value("basis", abelian.bockstein_basis(g)))
    return OK


_COMMANDS = {
    "eval": _cmd_eval,
    "validate": _cmd_validate,
    "verify": _cmd_verify,
    "testspace": _cmd_testspace,
    "sigma": _cmd_sigma,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return USAGE
    except (syntax.ParseError, abelian.GroupSyntaxError, KindError) as exc:
        err.write(f"error: {exc}\n")
        return USAGE
    except EvalError as exc:
        err.write(f"error: {exc}\n")
        return USAGE if isinstance(exc.cause, abelian.GroupSyntaxError) else DOMAIN
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        err.write(f"error: {exc}\n")
        return DOMAIN


def main(argv: List[str] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
