import importlib.resources as resources

import pytest

from dgl.kernel import (
    AXIOMS, Inference, ProofError, RULES, RenameUnsupported, apply_allgen,
    apply_br, apply_infer, apply_mp, apply_us, apply_usr, check_text,
    parse_script, uniform_rename,
)
from dgl.parser import parse_formula, parse_subst
from dgl.subst import ClashError
from dgl.varset import Variable

x, y = Variable("x"), Variable("y")


def _proof(name: str) -> str:
    return (resources.files("dgl") / "proofs" / name).read_text()


def test_axioms_are_closed_under_reparse():
    from dgl.printer import pretty
    for name, phi in AXIOMS.items():
        assert parse_formula(pretty(phi)) == phi, name


def test_us_instantiates_axiom():
    out = apply_us(parse_subst("q() ~> x>=0 ; p() ~> x>=1"), AXIOMS["test"])
    assert out == parse_formula("<?x>=0>x>=1 <-> x>=0 & x>=1")


def test_us_clash_rejected():
    with pytest.raises(ClashError):
        apply_us(parse_subst("f() ~> x"), AXIOMS["assign_eq"])


def test_usr_applies_under_cofinite_taboo():
    rule = apply_usr(parse_subst("c ~> {y:=1} ; d ~> {y:=2}"), RULES["M"])
    assert rule.premises[0] == parse_formula("<y:=1>true -> <y:=2>true")
    assert rule.conclusion == parse_formula("<a><y:=1>true -> <a><y:=2>true")


def test_mp_requires_exact_match():
    imp = parse_formula("x>=0 -> x>=0 | y>=0")
    assert apply_mp(imp, parse_formula("x>=0")) == parse_formula("x>=0 | y>=0")
    with pytest.raises(ProofError):
        apply_mp(imp, parse_formula("y>=0"))
    with pytest.raises(ProofError):
        apply_mp(parse_formula("x>=0"), parse_formula("x>=0"))


def test_allgen():
    out = apply_allgen(parse_formula("x>=0"), x)
    assert out == parse_formula("\\forall x x>=0")


def test_infer_checks_premises():
    rule = Inference((parse_formula("x>=0"),), parse_formula("x+1>=1"))
    assert apply_infer(rule, (parse_formula("x>=0"),)) == parse_formula("x+1>=1")
    with pytest.raises(ProofError):
        apply_infer(rule, (parse_formula("x>=1"),))


def test_uniform_rename_is_a_transposition():
    phi = parse_formula("\\exists x x>=y & x'=y'")
    swapped = uniform_rename(phi, x, y)
    assert swapped == parse_formula("\\exists y y>=x & y'=x'")
    assert uniform_rename(swapped, x, y) == phi


def test_uniform_rename_rejects_game_symbols():
    with pytest.raises(RenameUnsupported):
        uniform_rename(parse_formula("<a>x>=0"), x, y)


def test_bound_rename_recomputes_premise():
    target = parse_formula("x>=0 -> <x:=x>x>=0")
    premise = parse_formula("x>=0 -> <y:=x><y':=x'>y>=0")
    assert apply_br(premise, target) == target
    with pytest.raises(ProofError):
        apply_br(parse_formula("x>=0 -> <y:=x><y':=x'>y>=1"), target)


def test_br_requires_fresh_variable():
    # the new name may not occur in the renamed scope
    target = parse_formula("true -> <x:=1>x>=y")
    premise = parse_formula("true -> <y:=1><y':=x'>y>=x")
    with pytest.raises(ProofError):
        apply_br(premise, target)


def test_script_parsing_shapes():
    script = parse_script(_proof("assign_br.dglp"))
    kinds = {step.kind for step in script.steps}
    assert {"axiom", "us", "oracle", "mp", "br"} <= kinds
    assert script.goal is not None


def test_bundled_scripts_accepted():
    for name in ("stutter.dglp", "assign_br.dglp"):
        report = check_text(_proof(name))
        assert report.accepted, (name, report.error)
        assert report.oracles  # glue assumptions are surfaced, not hidden


def test_qed_must_match_last_step():
    text = _proof("assign_br.dglp").replace(
        'qed "v+1>=0 -> <y:=v+1>y>=0"',
        'qed "v+1>=0 -> <y:=v+1>y>=1"')
    report = check_text(text)
    assert not report.accepted


def test_unknown_step_reference_rejected():
    report = check_text('let a = mp b c\nqed "x>=0"')
    assert not report.accepted


def test_report_is_printable():
    report = check_text(_proof("assign_br.dglp"))
    text = str(report)
    assert "ACCEPTED" in text and "oracle" in text
