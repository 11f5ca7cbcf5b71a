import json

import pytest

from dimalg import abelian, corpus
from dimalg.abelian import cyclic, localized, prufer
from dimalg.bockstein import (
    GENERIC, ZERO_FUNCTION, BocksteinAxiomError, BocksteinFunction, DFunction, PrimeTriple,
    constant, dual, duality_identity_check, e_from_d, evaluate, gg_d_function, gg_restrict,
    is_p_regular, lattice_max, lattice_min, leq, shift, smash, sum_product, validate,
)
from dimalg.extnum import INF, NEG_INF
from dimalg.graded import parse_graded


def uniform(q, loc, mod, pru):
    return BocksteinFunction(q, (loc, mod, pru))


SING = uniform(0, 0, 0, -1)


def corpus_functions(n, seed=5, values=corpus.FULL_VALUES):
    rng = corpus.make_rng(seed)
    return [corpus.random_function(rng, values) for _ in range(n)]


# -- validation ----------------------------------------------------------------

def test_validate_examples():
    assert validate({"Q": 0, "default": {"loc": 0, "mod": 0, "pru": 0}}) == ZERO_FUNCTION
    with pytest.raises(BocksteinAxiomError) as info:
        validate({"Q": 0, "default": [0, 0, 0], "exceptions": {"2": [2, 2, 0]}})
    assert (2, 2) in info.value.violations
    assert "(p=2, axiom 2)" in str(info.value)
    assert not is_p_regular(SING) and is_p_regular(ZERO_FUNCTION)


def test_violation_names_generic():
    with pytest.raises(BocksteinAxiomError) as info:
        BocksteinFunction(5, (0, 0, 0))
    assert (GENERIC, 3) in info.value.violations


def test_validate_rejects_unknown_keys_and_non_primes():
    with pytest.raises(ValueError):
        validate({"Q": 0, "default": [0, 0, 0], "extra": 1})
    with pytest.raises(ValueError):
        BocksteinFunction(0, (0, 0, 0), {4: (1, 1, 1)})


def test_normalization_and_json_round_trip():
    f = BocksteinFunction(1, (1, 1, 1), {3: (1, 1, 1), 5: (2, 2, 1), 7: ("inf", "inf", "inf")})
    assert f.primes() == {5, 7}
    data = json.loads(json.dumps(f.to_json()))
    assert validate(data) == f


def test_evaluate():
    f = BocksteinFunction(1, (1, 1, 1), {3: (1, 1, 0)})
    assert evaluate(ZERO_FUNCTION, abelian.Group([cyclic(7)])) == 0
    assert evaluate(f, prufer(3)) == 0
    assert evaluate(f, localized(11)) == f.default.loc


def test_d_patterns_are_not_e_functions():
    d = gg_d_function(SING)
    assert isinstance(d, DFunction)
    with pytest.raises(TypeError):
        dual(d)
    with pytest.raises(TypeError):
        smash(d, SING)
    with pytest.raises(TypeError):
        leq(d, SING)


# -- closed-form examples ---------------------------------------------------------

def test_smash_examples():
    beta = uniform(2, 3, 2, 2)
    assert smash(ZERO_FUNCTION, beta) == beta
    assert smash(SING, SING) == uniform(0, 0, 0, -1)
    assert smash(beta, SING).q == beta.q + SING.q


def test_dual_examples():
    assert dual(ZERO_FUNCTION) == ZERO_FUNCTION
    assert dual(uniform(1, 1, 1, 0)) == uniform(-1, 0, -1, -1)
    assert dual(uniform(1, 1, 1, 1)) == constant(-1)


def test_sum_product_examples():
    assert sum_product(ZERO_FUNCTION, ZERO_FUNCTION) == ZERO_FUNCTION
    assert sum_product(SING, SING) == uniform(0, 0, 0, -1)
    r = sum_product(constant(1), SING)
    assert r.default.pru == 0 and r.default.loc == 1


def test_duality_identity_examples():
    assert duality_identity_check(SING, SING)
    assert duality_identity_check(ZERO_FUNCTION, ZERO_FUNCTION)


def test_gg_d_function_examples():
    d = gg_d_function(uniform(1, 1, 1, 0))
    assert (d.q, d.default) == (1, PrimeTriple.of(0, 1, 1))
    assert gg_d_function(constant(2)).default == PrimeTriple.of(2, 2, 2)
    assert gg_d_function(ZERO_FUNCTION) == DFunction()


def test_gg_restrict_examples():
    assert gg_restrict(ZERO_FUNCTION, [3]) == parse_graded("S^0(Q + Z_(3) + Z/3 + Z/3^inf)")
    f = BocksteinFunction(1, (1, 1, 1), {3: (1, 1, 0)})
    assert gg_restrict(f, [3]) == parse_graded("S^0(Z/3^inf) + S^1(Q + Z_(3) + Z/3)")
    g = BocksteinFunction(2, (2, 2, 2), {3: (INF, INF, INF)})
    assert gg_restrict(g, [3]) == parse_graded("S^2(Q)")
    with pytest.raises(ValueError):
        gg_restrict(constant(NEG_INF), [2])


def test_shift_and_lattice_examples():
    assert shift(ZERO_FUNCTION, 3) == constant(3)
    assert lattice_min(SING, SING) == SING
    # everywhere-regular finite functions are constants
    assert lattice_max(constant(1), constant(3)) == constant(3)
    assert lattice_min(constant(1), constant(3)) == constant(1)


def test_pointwise_min_can_break_axiom_5():
    a = uniform(0, 5, 4, 4)
    b = constant(3)
    with pytest.raises(BocksteinAxiomError):
        BocksteinFunction(0, (3, 3, 3))  # the pointwise min of a and b
    m = lattice_min(a, b)
    assert leq(m, a) and leq(m, b)


# -- properties over the random corpus --------------------------------------------------

def test_closure_and_involution():
    fs = corpus_functions(1500)
    for a, b in zip(fs, fs[1:]):
        assert dual(dual(a)) == a
        for op in (smash, sum_product, lattice_min, lattice_max):
            op(a, b)  # raises ClosureError on an invalid result
        shift(a, -2)


def test_duality_identity_on_corpus():
    fs = corpus_functions(1500, seed=9)
    assert all(duality_identity_check(a, b) for a, b in zip(fs, fs[1:]))


def test_unit_and_self_duality():
    for a in corpus_functions(500, seed=2):
        assert smash(ZERO_FUNCTION, a) == a
        assert (dual(a) == a) == (a == ZERO_FUNCTION)


def test_lattice_laws():
    fs = corpus_functions(300, seed=3)
    for a, b, c in zip(fs, fs[1:], fs[2:]):
        assert lattice_min(a, b) == lattice_min(b, a)
        assert lattice_max(a, b) == lattice_max(b, a)
        assert lattice_min(a, a) == a and lattice_max(a, a) == a
        assert lattice_min(a, lattice_min(b, c)) == lattice_min(lattice_min(a, b), c)
        assert lattice_max(a, lattice_max(b, c)) == lattice_max(lattice_max(a, b), c)
        assert lattice_min(a, lattice_max(a, b)) == a
        assert lattice_max(a, lattice_min(a, b)) == a
        m = lattice_min(a, b)
        assert leq(m, a) and leq(m, b)


def test_order_duality_and_monotone_smash():
    fs = corpus_functions(400, seed=4)
    for a, b in zip(fs, fs[1:]):
        lo, hi = lattice_min(a, b), a
        assert leq(dual(hi), dual(lo))
        assert leq(smash(lo, b), smash(hi, b))
        if leq(a, b):
            assert leq(dual(b), dual(a))


def test_dual_is_least_nonnegative_partner():
    fs = corpus_functions(200, seed=6)
    for beta in fs:
        star = dual(beta)
        assert leq(ZERO_FUNCTION, smash(star, beta))
        for alpha in fs[:40]:
            if leq(ZERO_FUNCTION, smash(alpha, beta)):
                assert leq(star, alpha)


def test_e_from_d_inverts_gg_d_function():
    for a in corpus_functions(1000, seed=8):
        assert e_from_d(gg_d_function(a)) == a
