import json

import pytest

from dimalg import bockstein, corpus, oracle
from dimalg.abelian import Z
from dimalg.bockstein import ZERO_FUNCTION, BocksteinFunction, DFunction, constant, gg_restrict
from dimalg.extnum import INF
from dimalg.graded import ZERO_GRADED, graded, parse_graded
from dimalg.oracle import PrimeScope

from mutants import MUTANTS, first_catch

SCOPE3 = PrimeScope((3,), 2)


def test_scope_rejects_generic_inside():
    with pytest.raises(ValueError):
        PrimeScope((2, 3), 3)
    assert PrimeScope.covering(BocksteinFunction(0, (0, 0, 0), {2: (1, 1, 0)})).generic == 3


def test_d_function_examples():
    alpha = BocksteinFunction(1, (1, 1, 1), {3: (1, 1, 0)})
    d = oracle.d_function(gg_restrict(alpha, [3, 2]), SCOPE3)
    assert d.q == 1 and d.triple(3) == (0, 1, 1)
    assert oracle.d_function(graded(Z), SCOPE3) == DFunction()
    top = oracle.d_function(ZERO_GRADED, SCOPE3)
    assert top.q == INF and top.default == (INF, INF, INF)


def test_e_function_examples():
    assert oracle.e_function(graded(Z, 3), SCOPE3) == constant(3)
    # frozen regression fixture for a single Pruefer group
    e = oracle.e_function(parse_graded("S^0(Z/3^inf)"), SCOPE3)
    assert e == BocksteinFunction(INF, (INF, INF, INF), {3: (INF, 1, 0)})
    with pytest.raises(ValueError):
        oracle.e_function(ZERO_GRADED, SCOPE3)


def test_verify_examples_pass():
    sing = BocksteinFunction(0, (0, 0, -1))
    assert oracle.verify_smash(sing, sing, SCOPE3)
    assert oracle.verify_dual(sing, SCOPE3)
    beta = BocksteinFunction(2, (2, 2, 2), {5: (3, 3, 2)})
    assert oracle.verify_smash(ZERO_FUNCTION, beta)


def test_report_json_shape():
    bad = first_catch(*MUTANTS["smash: singular Z/p^inf without +1"], cases=500)
    doc = json.loads(json.dumps(bad.to_json()))
    assert set(doc) == {"case", "passed", "path_a", "path_b", "first_divergence"}
    assert doc["passed"] is False
    assert doc["first_divergence"]["group"] == "Z/p^inf"


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_each_mutant_is_caught(name):
    kind, mutant = MUTANTS[name]
    assert first_catch(kind, mutant, cases=1000) is not None


def test_e_of_gg_is_identity():
    rng = corpus.make_rng(31)
    for _ in range(300):
        a = corpus.random_function(rng, corpus.FINITE_VALUES)
        scope = PrimeScope.covering(a)
        assert oracle.e_function(gg_restrict(a, scope.all_primes), scope) == a


def test_restriction_is_faithful_when_scope_grows():
    rng = corpus.make_rng(32)
    for _ in range(100):
        a = corpus.random_function(rng, corpus.FINITE_VALUES)
        small = PrimeScope.covering(a)
        big = PrimeScope.covering(a, extra=[11, 13])
        da = oracle.d_function(gg_restrict(a, small.all_primes), small)
        db = oracle.d_function(gg_restrict(a, big.all_primes), big)
        for p in (11, 13, big.generic):
            assert db.triple(p) == da.default


def test_minplus_agrees_with_concrete_route():
    rng = corpus.make_rng(33)
    for _ in range(150):
        a = corpus.random_function(rng, corpus.FINITE_VALUES)
        b = corpus.random_function(rng, corpus.FINITE_VALUES)
        scope = PrimeScope.covering(a, b)
        conc = oracle.d_function(gg_restrict(a, scope.all_primes), scope)
        assert oracle.minplus_d_function(a, scope) == conc
        assert oracle.minplus_smash(a, b, scope) == bockstein.smash(a, b)
        assert oracle.minplus_dual(a, scope) == bockstein.dual(a)


def test_infinite_values_via_minplus():
    for kind in ("smash", "dual", "dconv"):
        reports = oracle.run_corpus(kind, seed=3, cases=200, infinite=True)
        assert all(reports), [r.to_json() for r in reports if not r][:1]


def test_run_corpus_is_deterministic():
    a = [r.case for r in oracle.run_corpus("identity", 5, 20)]
    b = [r.case for r in oracle.run_corpus("identity", 5, 20)]
    assert a == b
    with pytest.raises(ValueError):
        oracle.run_corpus("nope", 0, 1)
