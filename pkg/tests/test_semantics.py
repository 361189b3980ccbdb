from fractions import Fraction

import pytest

from dgl.generators import (
    random_fo_usubst, random_interpretation, random_qff, random_state,
    random_taboo, random_term,
)
from dgl.parser import parse_formula, parse_subst, parse_term
from dgl.semantics import (
    EvalError, Interpretation, State, adjoint_eval_qff, adjoint_eval_term,
    check_substitution_value_qff, check_substitution_value_term, diff,
    eval_qff, eval_term, inline, sample_variation,
)
from dgl.varset import Variable, VarSet

x, y = Variable("x"), Variable("y")
F = Fraction


def mkstate(**kw):
    values = {}
    for name, val in kw.items():
        values[Variable(name.rstrip("_"), name.count("_"))] = F(val)
    return State(values)


def test_state_defaults_to_zero():
    s = State({x: F(3)})
    assert s[x] == 3 and s[y] == 0
    assert s.updated(y, F(2))[y] == 2


def test_polynomial_evaluation():
    s = mkstate(x=2, y=3)
    assert eval_term(Interpretation({}), s, parse_term("x^2+y*2-1")) == 9
    assert eval_term(Interpretation({}), s, parse_term("x-y")) == -1


def test_interpreted_symbol_evaluation():
    interp = Interpretation({parse_term("f(.)").sym: parse_term(".^2+1")})
    s = mkstate(x=3)
    assert eval_term(interp, s, parse_term("f(x+1)")) == 17


def test_uninterpreted_symbol_raises():
    with pytest.raises(EvalError):
        eval_term(Interpretation({}), State(), parse_term("f()"))


def test_interpretation_must_be_closed():
    with pytest.raises(EvalError):
        Interpretation({parse_term("f(.)").sym: parse_term("x+.")})
    with pytest.raises(EvalError):
        Interpretation({parse_term("f(.)").sym: parse_term("g(.)")})


def test_symbolic_derivative():
    t = parse_term("x^2*y+x")
    assert diff(t, x) == parse_term("2*x^1*y+1") or \
        eval_term(Interpretation({}), mkstate(x=5, y=7), diff(t, x)) == 71


def test_differential_evaluates_as_prime_weighted_gradient():
    # (x*y)' at x'=2, y'=5 is 2*y + 5*x
    s = mkstate(x=3, y=4, x_=2, y_=5)
    assert eval_term(Interpretation({}), s, parse_term("(x*y)'")) == 2 * 4 + 5 * 3


def test_differential_of_interpreted_symbol():
    interp = Interpretation({parse_term("f(.)").sym: parse_term(".^2")})
    s = mkstate(x=3, x_=1)
    # (f(x))' = 2x·x'
    assert eval_term(interp, s, parse_term("(f(x))'")) == 6


def test_qff_evaluation():
    interp = Interpretation({})
    s = mkstate(x=1)
    assert eval_qff(interp, s, parse_formula("x>=0 & !(x>1) | false"))
    assert not eval_qff(interp, s, parse_formula("x!=1"))


def test_qff_rejects_quantifiers():
    with pytest.raises(EvalError):
        eval_qff(Interpretation({}), State(), parse_formula("\\exists x x=0"))


def test_adjoint_gives_replacement_value_anchored():
    sigma = parse_subst("f() ~> x+1")
    omega = mkstate(x=4)
    nu = mkstate(x=100)
    # the adjoint freezes f at omega's value of x+1, whatever nu says
    assert adjoint_eval_term(sigma, Interpretation({}), omega, nu,
                             parse_term("f()")) == 5


def test_adjoint_unary_key_keeps_dot():
    sigma = parse_subst("f(.) ~> .*x")
    omega = mkstate(x=3)
    nu = mkstate(x=0, y=7)
    assert adjoint_eval_term(sigma, Interpretation({}), omega, nu,
                             parse_term("f(y)")) == 21


def test_sample_variation_agrees_off_taboo(rng):
    omega = mkstate(x=1, y=2)
    taboo = VarSet.finite([x])
    for _ in range(20):
        nu = sample_variation(omega, taboo, rng)
        assert nu[y] == omega[y]


def test_substitution_value_term_campaign(rng):
    checked = 0
    for _ in range(400):
        interp = random_interpretation(rng)
        omega = random_state(rng)
        sigma = random_fo_usubst(rng, qff=True)
        taboo = random_taboo(rng)
        t = random_term(rng, 4)
        report = check_substitution_value_term(sigma, taboo, t, interp,
                                               omega, rng)
        assert report.passed, report.counterexample
        checked += report.trials
    assert checked > 400


def test_substitution_value_qff_campaign(rng):
    checked = 0
    for _ in range(300):
        interp = random_interpretation(rng)
        omega = random_state(rng)
        sigma = random_fo_usubst(rng, qff=True)
        taboo = random_taboo(rng)
        f = random_qff(rng, 4)
        report = check_substitution_value_qff(sigma, taboo, f, interp,
                                              omega, rng)
        assert report.passed, report.counterexample
        checked += report.trials
    assert checked > 300


def test_capture_shows_up_as_a_value_difference():
    # why the clash check is load-bearing: under an x-variation, a naively
    # capturing substitution of f()~>x disagrees with the adjoint value
    sigma = parse_subst("f() ~> x")
    interp = Interpretation({})
    omega = mkstate(x=1)
    nu = mkstate(x=2)  # varies the taboo variable x
    assert eval_term(interp, nu, parse_term("x")) == 2
    assert adjoint_eval_term(sigma, interp, omega, nu, parse_term("f()")) == 1


def test_inline_expands_everything():
    interp = Interpretation({parse_term("f(.)").sym: parse_term(".^2")})
    t = inline(interp, parse_term("f(x+1)"))
    assert eval_term(Interpretation({}), mkstate(x=2), t) == 9
