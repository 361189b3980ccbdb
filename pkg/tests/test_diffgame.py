from dgl.diffgame import diffgame_checks, subst_diffgame
from dgl.parser import parse_game, parse_subst
from dgl.varset import EMPTY, Variable, VarSet

x, u, w0 = Variable("x"), Variable("u"), Variable("w0")


def test_well_formed_game_has_no_violations():
    g = parse_game("{x'=x+u*w0 &d u in (u*u<=1) & w0 in (w0<=1)}")
    violations, obligations = diffgame_checks(g)
    assert violations == []
    # compactness of the constraint sets cannot be checked syntactically
    assert len(obligations) == 2
    assert all("compact" in ob.text for ob in obligations)


def test_constraint_mentioning_state_rejected():
    g = parse_game("{x'=u &d u in (u<=x) & w0 in (w0<=1)}")
    violations, _ = diffgame_checks(g)
    assert any("mentions" in v for v in violations)


def test_constraint_with_quantifier_rejected():
    g = parse_game("{x'=u &d u in (\\exists u u<=1) & w0 in (w0<=1)}")
    violations, _ = diffgame_checks(g)
    assert any("quantifier" in v for v in violations)


def test_substitution_emits_state_and_control_taboos():
    sigma = parse_subst("f(.) ~> .^2")
    g = parse_game("{x'=f(x) &d u in (u<=1) & w0 in (w0<=1)}")
    out, taboo = subst_diffgame(sigma, EMPTY, g)
    assert out == parse_game("{x'=x^2 &d u in (u<=1) & w0 in (w0<=1)}")
    expected = VarSet.finite([x, x.prime, u, u.prime, w0, w0.prime])
    assert taboo == expected


def test_rhs_substituted_under_state_taboo():
    import pytest
    from dgl.subst import ClashError
    sigma = parse_subst("f() ~> x")
    g = parse_game("{x'=f() &d u in (u<=1) & w0 in (w0<=1)}")
    with pytest.raises(ClashError):
        subst_diffgame(sigma, EMPTY, g)
