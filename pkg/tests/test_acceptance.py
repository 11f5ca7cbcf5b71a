"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, which
repeats the lines in an "acceptance criteria" summary section.
"""

import io
import itertools
import json
import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import record  # noqa: E402
from dimalg import abelian, bockstein, corpus, dimtheory, oracle  # noqa: E402
from dimalg.abelian import Group, Z, bockstein_basis, dim_group  # noqa: E402
from dimalg.bockstein import (  # noqa: E402
    ClosureError, dual, duality_identity_check, gg_restrict, lattice_max, lattice_min, smash, sum_product,
)
from dimalg.cli import parse, run, to_source  # noqa: E402
from dimalg.cli.evaluate import evaluate  # noqa: E402
from dimalg.dimtheory import CompactumProfile, dim_of_smash, dim_with_coefficients  # noqa: E402
from dimalg.extnum import INF, NEG_INF, ExtInt  # noqa: E402
from dimalg.graded import cin, direct_sum, graded, smash as graded_smash  # noqa: E402
from dimalg.oracle import PrimeScope, bockstein_universe  # noqa: E402

N_CORPUS = 10_000
N_ORACLE = 1_000


def _functions(n, seed, values=corpus.FULL_VALUES):
    rng = corpus.make_rng(seed)
    return [corpus.random_function(rng, values) for _ in range(n)]


def test_criterion_01_extint_laws():
    t0 = time.perf_counter()
    vals = [NEG_INF, ExtInt(-2), ExtInt(-1), ExtInt(0), ExtInt(1), ExtInt(2), INF]
    bad = []
    for a, b, c in itertools.product(vals, repeat=3):
        if a + b != b + a or (a + b) + c != a + (b + c):
            bad.append(("algebra", a, b, c))
        if not (a <= a and (a <= b or b <= a)):
            bad.append(("total", a, b))
        if a <= b and b <= a and a != b:
            bad.append(("antisymmetric", a, b))
        if a <= b <= c and not a <= c:
            bad.append(("transitive", a, b, c))
        if a <= b and not a + c <= b + c:
            bad.append(("monotone", a, b, c))
    mixed = INF + NEG_INF == INF and NEG_INF + INF == INF
    elapsed = time.perf_counter() - t0
    ok = not bad and mixed and elapsed < 1.0
    record(1, ok, f"ExtInt laws on 7^3 triples, {len(bad)} violations, +inf+(-inf)=+inf both orders: {mixed}, {elapsed:.3f}s")
    assert ok, bad[:3]


def test_criterion_02_dual_involution():
    fs = _functions(N_CORPUS, 101)
    bad = [f for f in fs if dual(dual(f)) != f]
    record(2, not bad, f"dual(dual b) = b on {len(fs)} random functions, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_03_duality_identity():
    fs = _functions(N_CORPUS + 1, 102)
    bad = [(a, b) for a, b in zip(fs, fs[1:]) if not duality_identity_check(a, b)]
    record(3, not bad, f"a [+] b = (a* ^ b*)* on {N_CORPUS} random pairs, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_04_closure():
    fs = _functions(N_CORPUS + 1, 103)
    bad = []
    for a, b in zip(fs, fs[1:]):
        for op in (smash, sum_product, lattice_min, lattice_max):
            try:
                op(a, b)
            except ClosureError as err:
                bad.append((op.__name__, a, b, str(err)))
        try:
            dual(a)
        except ClosureError as err:
            bad.append(("dual", a, str(err)))
    record(4, not bad, f"smash/dual/sum-product/min/max valid on {N_CORPUS} pairs, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_05_oracle_equivalence_and_mutants():
    from mutants import MUTANTS, first_catch

    t0 = time.perf_counter()
    failures = {}
    for kind in ("smash", "dual", "dconv"):
        reports = oracle.run_corpus(kind, seed=105, cases=N_ORACLE, primes=(2, 3, 5, 7))
        failures[kind] = [r for r in reports if not r.passed]
    survivors = [name for name, (kind, m) in MUTANTS.items() if first_catch(kind, m, N_ORACLE) is None]
    elapsed = time.perf_counter() - t0
    nfail = sum(len(v) for v in failures.values())
    ok = nfail == 0 and not survivors and len(MUTANTS) == 6 and elapsed < 30
    record(5, ok, f"oracle: {3 * N_ORACLE - nfail}/{3 * N_ORACLE} pass; mutants caught "
                  f"{len(MUTANTS) - len(survivors)}/{len(MUTANTS)}; {elapsed:.1f}s")
    assert ok, (failures, survivors, elapsed)


def test_criterion_06_e_of_gg_is_identity():
    fs = _functions(N_ORACLE, 106, corpus.FINITE_VALUES)
    bad = []
    for a in fs:
        scope = PrimeScope.covering(a)
        if oracle.e_function(gg_restrict(a, scope.all_primes), scope) != a:
            bad.append(a)
    record(6, not bad, f"e(GG(a)) = a on {len(fs)} finite-valued functions, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_07_bockstein_basis():
    universe = corpus.basic_universe((2, 3, 5))
    groups = universe + [a + b for i, a in enumerate(universe) for b in universe[i:]]
    tests = corpus.basic_universe((2, 3, 5, 7))
    candidates = [Group([h]) for h in bockstein_universe((2, 3, 5, 7))]
    bad = []
    for g in groups:
        basis = bockstein_basis(g)
        for h in candidates:
            definitional = all(dim_group(f, g) <= dim_group(f, h) for f in tests)
            if definitional != (h.summands[0] in basis):
                bad.append((str(g), str(h)))
    record(7, not bad, f"sigma(G) matches the dimension order for {len(groups)} groups x "
                       f"{len(candidates)} Bockstein groups, {len(bad)} mismatches")
    assert not bad, bad[:5]


def _dim_via_dual(x, g):
    """dim_G(X) = -min_F (d_X*(F) + dim(F, G)), a route that never touches sigma(G)."""
    a = dual(x.d)
    primes = sorted(set(x.primes()) | set(g.primes()))
    primes.append(abelian.fresh_prime(primes))
    return -min(a.value(f) + dim_group(Group([f]), g) for f in bockstein_universe(primes))


def _dim_via_basis_sum(x, g):
    """dim_G(X) with G replaced by the (scope-restricted) direct sum of its basis."""
    basis = bockstein_basis(g)
    primes = sorted(set(x.primes()) | set(g.primes()))
    primes.append(abelian.fresh_prime(primes))
    members = basis.members(primes)
    return dim_with_coefficients(x, Group(members)) if members else NEG_INF


def test_criterion_08_bockstein_theorems():
    rng = corpus.make_rng(108)
    profiles = [CompactumProfile(corpus.random_profile_function(rng)) for _ in range(N_CORPUS + 1)]
    universe = corpus.basic_universe((2, 3, 5))
    groups = universe + [a + b for i, a in enumerate(universe) for b in universe[i:]]
    smash_bad, coeff_bad = [], []
    for x, y in zip(profiles, profiles[1:]):
        try:
            dim_of_smash(x, y)
        except dimtheory.DiscrepancyError as err:
            smash_bad.append(str(err))
        g = rng.choice(groups)
        d = dim_with_coefficients(x, g)
        if d != _dim_via_dual(x, g) or d != _dim_via_basis_sum(x, g):
            coeff_bad.append((x, str(g)))
    ok = not smash_bad and not coeff_bad
    record(8, ok, f"dim_of_smash clauses = sum-product on {N_CORPUS} profile pairs ({len(smash_bad)} failures); "
                  f"dim_G(X) basis/dual/basis-sum routes agree ({len(coeff_bad)} failures)")
    assert ok, (smash_bad[:2], coeff_bad[:2])


def test_criterion_09_test_spaces():
    fixture = dimtheory.test_space(abelian.parse_group("Z/3"), 3).d
    expected = bockstein.BocksteinFunction(1, (1, 1, 1), {3: (3, 3, 2)})
    rng = corpus.make_rng(109)
    universe = corpus.basic_universe((2, 3, 5))
    checked, bad, draws = 0, [], 0
    while checked < N_ORACLE:
        draws += 1
        x = CompactumProfile(corpus.random_profile_function(rng))
        g, n = rng.choice(universe), rng.randint(2, 5)
        dg = dim_with_coefficients(x, g)
        if not dim_with_coefficients(x, Z) < dg + n:
            continue
        checked += 1
        t = dimtheory.test_space(g, n)
        if dim_with_coefficients(dim_of_smash(x, t), Z) != dg + n:
            bad.append((x, str(g), n))
    ok = not bad and fixture == expected
    record(9, ok, f"dim_Z(X^T) = dim_G(X)+n on {checked} premise cases ({draws} drawn), {len(bad)} failures; "
                  f"testspace(Z/3,3) fixture {'matches' if fixture == expected else 'differs'}")
    assert ok, (bad[:3], fixture)


def test_criterion_10_valuation_laws():
    rng = corpus.make_rng(110)
    bad, strict = [], []
    for _ in range(N_CORPUS):
        a, b = corpus.random_graded(rng), corpus.random_graded(rng)
        if cin(direct_sum(a, b)) != min(cin(a), cin(b)):
            bad.append(("sum", a, b))
        c = cin(graded_smash(a, b))
        if not c >= cin(a) + cin(b):
            bad.append(("smash", a, b))
        elif c > cin(a) + cin(b):
            strict.append((a, b))
    a, b = graded("Z/2"), graded("Z/3")
    witness = cin(graded_smash(a, b)) == INF and cin(a) + cin(b) == 0
    ok = not bad and witness and strict
    record(10, ok, f"cin laws on {N_CORPUS} random pairs, {len(bad)} failures; {len(strict)} strict cases; "
                   f"cross-prime witness cin(Z/2 ^ Z/3) = inf > 0: {witness}")
    assert ok, bad[:3]


def test_criterion_11_cli():
    import tempfile
    from test_cli import ENV, expressions

    exprs = expressions()
    trip_bad = []
    for text in exprs:
        tree = parse(text)
        again = parse(to_source(tree))
        if again != tree or evaluate(again, ENV) != evaluate(tree, ENV):
            trip_bad.append(text)
    out = io.StringIO()
    verify_code = run(["verify", "identity", "--seed", "7", "--cases", "1000"], out, io.StringIO())
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "bad.json")
        with open(path, "w") as fh:
            json.dump({"Q": 0, "default": {"loc": 0, "mod": 0, "pru": 0},
                       "exceptions": {"2": {"loc": 2, "mod": 2, "pru": 0}}}, fh)
        vout = io.StringIO()
        validate_code = run(["validate", path], vout, io.StringIO())
    ok = (not trip_bad and len(exprs) >= 50 and verify_code == 0 and "1000/1000 pass" in out.getvalue()
          and validate_code == 1 and "(p=2, axiom 2)" in vout.getvalue())
    record(11, ok, f"round-trip {len(exprs) - len(trip_bad)}/{len(exprs)}; verify identity exit {verify_code} "
                   f"({out.getvalue().strip()}); validate exit {validate_code} ({vout.getvalue().strip()})")
    assert ok, trip_bad


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
