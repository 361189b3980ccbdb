import pytest

from dgl.generators import random_formula, random_game, random_term, random_usubst
from dgl.parser import (
    ParseError, parse_formula, parse_game, parse_kind, parse_subst, parse_term,
)
from dgl.printer import pretty
from dgl.subst import SubstError
from dgl.syntax import (
    Assign, Box, Choice, Cmp, Diamond, DiffGame, Differential, Dual, Equiv,
    Exists, FuncApp, Imply, Loop, Neg, Number, ODE, Plus, Power, PredApp,
    Seq, Test, TRUE, Var,
)
from dgl.varset import Variable

x, y, v = Variable("x"), Variable("y"), Variable("v")


def test_roundtrip_random(rng):
    for _ in range(800):
        for gen, parse in ((random_term, parse_term),
                           (random_formula, parse_formula),
                           (random_game, parse_game)):
            e = gen(rng, rng.randint(0, 6))
            assert parse(pretty(e)) == e, pretty(e)


def test_minus_is_sugar():
    t = parse_term("x-y")
    assert t == Plus(Var(x), Neg(Var(y)))
    assert pretty(t) == "x-y"


def test_subtraction_groups_left():
    assert pretty(parse_term("x-y-1")) == "x-y-1"
    assert parse_term("x-y-1") == parse_term("(x-y)-1")


def test_prime_lexes_with_identifier():
    assert parse_term("x'") == Var(x.prime)
    assert parse_term("(x)'") == Differential(Var(x))
    assert parse_term("(x*y)'") == Differential(parse_term("x*y"))


def test_power_binds_tighter_than_times():
    assert parse_term("2*x^2") == parse_term("2*(x^2)")
    assert pretty(parse_term("(x+1)^3")) == "(x+1)^3"


def test_fraction_literal():
    from fractions import Fraction
    assert parse_term("1/2") == Number(Fraction(1, 2))


def test_implication_right_associative():
    f = parse_formula("p() -> q() -> p()")
    assert f == Imply(parse_formula("p()"), parse_formula("q() -> p()"))


def test_quantifier_scope():
    f = parse_formula("\\exists x x>=0 & y>=0")
    assert f == parse_formula("(\\exists x x>=0) & y>=0")


def test_modality_close_versus_comparison():
    f = parse_formula("<?q()>p()")
    assert f == Diamond(Test(PredApp(parse_formula("q()").sym)), parse_formula("p()"))
    g = parse_formula("<?(x>0)>x>0")
    assert isinstance(g, Diamond) and isinstance(g.game, Test)


def test_bare_ode_in_sequence():
    g = parse_game("x:=x+v; x'=v")
    assert g == Seq(Assign(x, parse_term("x+v")), ODE(((x, Var(v)),), TRUE))


def test_ode_domain_requires_braces():
    g = parse_game("{x'=v & x>=0}")
    assert g == ODE(((x, Var(v)),), parse_formula("x>=0"))


def test_game_precedence():
    g = parse_game("a; b ++ c")
    assert isinstance(g, Choice)
    assert parse_game("{a ++ b}*") == Loop(parse_game("a ++ b"))
    assert parse_game("{a}^d") == Dual(parse_game("a"))


def test_diffgame_form():
    g = parse_game("{x'=v &d u in (u<=1) & w0 in (w0<=1)}")
    assert isinstance(g, DiffGame)
    assert g.y == Variable("u") and g.z == Variable("w0")
    assert pretty(g) == "{x'=v &d u in (u<=1) & w0 in (w0<=1)}"


def test_parse_kind_dispatch():
    assert parse_kind("x+1", "term") == parse_term("x+1")
    assert parse_kind("x>=1", "formula") == parse_formula("x>=1")
    assert parse_kind("x:=1", "game") == parse_game("x:=1")


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse_term("x+1)")
    with pytest.raises(ParseError):
        parse_formula("x>=0 x")


def test_unrecognized_character():
    with pytest.raises(ParseError):
        parse_term("x$y")


def test_parse_subst_roundtrip(rng):
    for _ in range(200):
        sigma = random_usubst(rng)
        again = parse_subst(str(sigma))
        assert again.entries == sigma.entries


def test_parse_subst_entries():
    sigma = parse_subst("f() ~> -x ; p(.) ~> .>=0 ; a ~> {x:=1}")
    kinds = sorted((s.kind, s.name) for s in sigma.entries)
    assert kinds == [("func", "f"), ("game", "a"), ("pred", "p")]


def test_parse_subst_duplicate_rejected():
    with pytest.raises(SubstError):
        parse_subst("f() ~> 1 ; f() ~> 2")
