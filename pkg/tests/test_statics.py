from dgl.parser import parse_formula, parse_game, parse_term
from dgl.statics import (
    bv_game, fv_formula, fv_game, fv_term, mbv_game, occurring_vars, signature,
)
from dgl.varset import ALL, EMPTY, Variable, VarSet

x, y, z, v = (Variable(n) for n in "xyzv")


def fin(*vs):
    return VarSet.finite(vs)


def test_fv_term_basics():
    assert fv_term(parse_term("x+y*2")) == fin(x, y)
    assert fv_term(parse_term("f()")) == EMPTY
    assert fv_term(parse_term("x'")) == fin(x.prime)


def test_fv_differential_adds_primes():
    # the differential of a term depends on the primes of its variables too
    assert fv_term(parse_term("(x*y)'")) == fin(x, y, x.prime, y.prime)


def test_fv_formula_quantifier():
    assert fv_formula(parse_formula("\\exists x x>=y")) == fin(y)


def test_fv_formula_modality_subtracts_must_bound():
    f = parse_formula("<x:=1>x>=y")
    assert fv_formula(f) == fin(y)
    # a choice binds x on only one branch, so x stays free
    g = parse_formula("<x:=1 ++ y:=2>x>=0")
    assert fv_formula(g) == fin(x)


def test_fv_game_symbol_is_all():
    assert fv_game(parse_game("a")) == ALL
    assert bv_game(parse_game("a")) == ALL


def test_bv_atomic_games():
    assert bv_game(parse_game("x:=1")) == fin(x)
    assert bv_game(parse_game("x'=v")) == fin(x, x.prime)
    assert bv_game(parse_game("?x>=0")) == EMPTY


def test_bv_diffgame_includes_controls():
    g = parse_game("{x'=v &d u in (u<=1) & w0 in (w0<=1)}")
    u, w0 = Variable("u"), Variable("w0")
    assert bv_game(g) == fin(x, x.prime, u, u.prime, w0, w0.prime)


def test_mbv_choice_intersects():
    g = parse_game("{x:=1; y:=2} ++ {x:=3; z:=4}")
    assert mbv_game(g) == fin(x)
    assert bv_game(g) == fin(x, y, z)


def test_mbv_loop_is_empty():
    assert mbv_game(parse_game("{x:=1}*")) == EMPTY
    assert bv_game(parse_game("{x:=1}*")) == fin(x)


def test_fv_seq_uses_must_bound():
    # y:=x binds y before it is read, so only x is free
    g = parse_game("y:=x; z:=y")
    assert fv_game(g) == fin(x)
    assert mbv_game(g) == fin(y, z)


def test_fv_ode_includes_lhs_and_domain():
    g = parse_game("{x'=y & z>=0}")
    assert fv_game(g) == fin(x, y, z)


def test_fv_loop():
    assert fv_game(parse_game("{x:=x+y}*")) == fin(x, y)


def test_signature_and_occurring_vars():
    f = parse_formula("<a>p(f(x)) & q()")
    syms = {(s.kind, s.name, s.arity) for s in signature(f)}
    assert syms == {("game", "a", 0), ("pred", "p", 1), ("func", "f", 1),
                    ("pred", "q", 0)}
    assert occurring_vars(f) == fin(x)


def test_dual_transparent_for_variables():
    g = parse_game("{x:=1}^d")
    assert bv_game(g) == fin(x)
    assert mbv_game(g) == fin(x)
