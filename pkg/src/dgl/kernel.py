"""A small LCF-style proof kernel.

The axiom base is a fixed table of concrete formulas; everything else is
derived by uniform substitution (US on formulas, USR on whole rules),
modus ponens, universal generalization, uniform renaming and bound
renaming of assignments.  Oracle steps admit base-logic facts without
proof; the checker accepts them but reports every one, so a reader can
audit exactly what was assumed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .parser import parse_formula, parse_subst
from .printer import pretty
from .statics import occurring_vars
from .subst import ClashError, USubst, subst_formula, us
from .syntax import (
    And, Assign, Box, Cmp, Diamond, Differential, Dual, Equiv, Exists,
    FalseF, Forall, Formula, FuncApp, GameSym, Imply, Loop, Neg, Not,
    Number, ODE, Or, Plus, Power, PredApp, Seq, Term, Test, Times, TrueF,
    Var, iter_nodes, Choice, DiffGame,
)
from .varset import ALL, EMPTY, Variable


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class Inference:
    """A derived rule: premises over a conclusion."""

    premises: tuple[Formula, ...]
    conclusion: Formula


AXIOMS: dict[str, Formula] = {
    name: parse_formula(text)
    for name, text in {
        "box": "[a]<c>true <-> !<a>!<c>true",
        "assign_eq": "<x:=f()><c>true <-> \\exists x (x=f() & <c>true)",
        "DS": "<{x'=f()}><c>true <-> \\exists t (t>=0 & <x:=x+f()*t><x':=f()><c>true)",
        "test": "<?q()>p() <-> q() & p()",
        "choice": "<a ++ b><c>true <-> <a><c>true | <b><c>true",
        "compose": "<a; b><c>true <-> <a><b><c>true",
        "iterate": "<{a}*><c>true <-> <c>true | <a><{a}*><c>true",
        "dual": "<{a}^d><c>true <-> !<a>!<c>true",
    }.items()
}

RULES: dict[str, Inference] = {
    "M": Inference(
        (parse_formula("<c>true -> <d>true"),),
        parse_formula("<a><c>true -> <a><d>true")),
    "FP": Inference(
        (parse_formula("<c>true | <a><d>true -> <d>true"),),
        parse_formula("<{a}*><c>true -> <d>true")),
}


def apply_us(sigma: USubst, phi: Formula) -> Formula:
    """Uniform substitution on a proved formula, no initial taboos."""
    return us(sigma, phi)


def apply_usr(sigma: USubst, rule: Inference) -> Inference:
    """Uniform substitution on a whole rule.  Premises of a rule hold in
    every state, so every variable is taboo throughout."""
    return Inference(
        tuple(subst_formula(sigma, ALL, p) for p in rule.premises),
        subst_formula(sigma, ALL, rule.conclusion))


def apply_mp(implication: Formula, antecedent: Formula) -> Formula:
    if not isinstance(implication, Imply):
        raise ProofError(f"mp needs an implication, got {pretty(implication)}")
    if implication.left != antecedent:
        raise ProofError(
            f"mp antecedent mismatch: expected {pretty(implication.left)}, "
            f"got {pretty(antecedent)}")
    return implication.right


def apply_allgen(phi: Formula, x: Variable) -> Formula:
    return Forall(x, phi)


def apply_infer(rule: Inference, premises: tuple[Formula, ...]) -> Formula:
    if len(premises) != len(rule.premises):
        raise ProofError(f"rule expects {len(rule.premises)} premises, got {len(premises)}")
    for want, got in zip(rule.premises, premises):
        if want != got:
            raise ProofError(f"premise mismatch: expected {pretty(want)}, got {pretty(got)}")
    return rule.conclusion


# ---------------------------------------------------------------------------
# renaming


class RenameUnsupported(ProofError):
    """Uniform renaming is only sound without game symbols in scope."""


def uniform_rename(e, x: Variable, y: Variable):
    """Transpose x with y (and x' with y') everywhere, binders included."""
    x, y = x.base, y.base
    swap = {x: y, y: x, x.prime: y.prime, y.prime: x.prime}

    def sv(v: Variable) -> Variable:
        return swap.get(v, v)

    def go(n):
        match n:
            case GameSym(s):
                raise RenameUnsupported(
                    f"cannot uniformly rename across game symbol {s.name}")
            case Var(v):
                return Var(sv(v))
            case Number() | TrueF() | FalseF():
                return n
            case FuncApp(s, arg):
                return FuncApp(s, None if arg is None else go(arg))
            case PredApp(s, arg):
                return PredApp(s, None if arg is None else go(arg))
            case Plus(a, b):
                return Plus(go(a), go(b))
            case Times(a, b):
                return Times(go(a), go(b))
            case Neg(a):
                return Neg(go(a))
            case Power(a, k):
                return Power(go(a), k)
            case Differential(a):
                return Differential(go(a))
            case Cmp(op, a, b):
                return Cmp(op, go(a), go(b))
            case Not(a):
                return Not(go(a))
            case And(a, b):
                return And(go(a), go(b))
            case Or(a, b):
                return Or(go(a), go(b))
            case Imply(a, b):
                return Imply(go(a), go(b))
            case Equiv(a, b):
                return Equiv(go(a), go(b))
            case Exists(v, a):
                return Exists(sv(v), go(a))
            case Forall(v, a):
                return Forall(sv(v), go(a))
            case Diamond(g, a):
                return Diamond(go(g), go(a))
            case Box(g, a):
                return Box(go(g), go(a))
            case Assign(v, t):
                return Assign(sv(v), go(t))
            case ODE(eqs, dom):
                return ODE(tuple((sv(w), go(rhs)) for w, rhs in eqs), go(dom))
            case Test(c):
                return Test(go(c))
            case Choice(a, b):
                return Choice(go(a), go(b))
            case Seq(a, b):
                return Seq(go(a), go(b))
            case Loop(a):
                return Loop(go(a))
            case Dual(a):
                return Dual(go(a))
            case DiffGame(eqs, yy, y_in, zz, z_in):
                return DiffGame(tuple((sv(w), go(rhs)) for w, rhs in eqs),
                                sv(yy), go(y_in), sv(zz), go(z_in))
        raise TypeError(f"not an expression: {n!r}")

    return go(e)


def apply_br(premise: Formula, target: Formula) -> Formula:
    """Bound renaming of an assignment.

    From  phi -> <y:=theta><y':=x'> psi[x~y]   conclude  phi -> <x:=theta> psi
    (same with boxes), provided y and y' do not occur in psi.  The premise
    shape is recomputed from the target, so nothing about it is trusted.
    """
    if not isinstance(target, Imply):
        raise ProofError("bound renaming expects an implication target")
    phi, modal = target.left, target.right
    if isinstance(modal, Diamond):
        wrap = Diamond
    elif isinstance(modal, Box):
        wrap = Box
    else:
        raise ProofError("bound renaming expects an assignment modality")
    if not isinstance(modal.game, Assign):
        raise ProofError("bound renaming expects an assignment modality")
    x, theta, psi = modal.game.var, modal.game.term, modal.body

    if not isinstance(premise, Imply) or premise.left != phi:
        raise ProofError("premise does not match the target's assumption")
    outer = premise.right
    if not (isinstance(outer, wrap) and isinstance(outer.game, Assign)):
        raise ProofError("premise is not a renamed assignment chain")
    y = outer.game.var
    if y.order != 0 or x.order != 0:
        raise ProofError("bound renaming applies to base variables only")
    occurring = occurring_vars(psi)
    if y in occurring or y.prime in occurring or y == x:
        raise ProofError(f"renaming variable {y} is not fresh for the scope")
    expected = Imply(
        phi,
        wrap(Assign(y, theta),
             wrap(Assign(y.prime, Var(x.prime)), uniform_rename(psi, x, y))))
    if premise != expected:
        raise ProofError(
            f"premise mismatch: expected {pretty(expected)}, got {pretty(premise)}")
    return target


# ---------------------------------------------------------------------------
# proof scripts


@dataclass
class Step:
    name: str
    kind: str  # axiom | us | usr | infer | mp | allgen | br | rename | oracle
    args: tuple


@dataclass
class Script:
    steps: list[Step]
    goal: Formula


@dataclass
class Report:
    accepted: bool
    goal: Optional[Formula]
    derived: dict[str, Union[Formula, Inference]] = field(default_factory=dict)
    oracles: list[Formula] = field(default_factory=list)
    error: Optional[str] = None
    error_step: Optional[str] = None

    def __str__(self) -> str:
        lines = []
        for name, val in self.derived.items():
            if isinstance(val, Inference):
                prem = " ; ".join(pretty(p) for p in val.premises)
                lines.append(f"  {name}: [{prem} |- {pretty(val.conclusion)}]")
            else:
                lines.append(f"  {name}: {pretty(val)}")
        for o in self.oracles:
            lines.append(f"  assumed (oracle): {pretty(o)}")
        status = "ACCEPTED" if self.accepted else f"REJECTED ({self.error} at {self.error_step})"
        lines.append(status)
        return "\n".join(lines)


_LET_RE = re.compile(r"let\s+([A-Za-z][A-Za-z0-9_]*)\s*=\s*(.*)")
_QUOTED_RE = re.compile(r'"([^"]*)"')


def parse_script(text: str) -> Script:
    steps: list[Step] = []
    goal = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if goal is not None:
            raise ProofError(f"line {lineno}: statements after qed")
        if line.startswith("qed"):
            m = _QUOTED_RE.search(line)
            if not m:
                raise ProofError(f"line {lineno}: qed needs a quoted formula")
            goal = parse_formula(m.group(1))
            continue
        m = _LET_RE.match(line)
        if not m:
            raise ProofError(f"line {lineno}: expected 'let name = step' or 'qed'")
        name, rest = m.group(1), m.group(2).strip()
        kind, _, argstr = rest.partition(" ")
        argstr = argstr.strip()
        if kind == "axiom":
            steps.append(Step(name, kind, (argstr,)))
        elif kind == "us":
            m2 = re.match(r'"([^"]*)"\s+([A-Za-z][A-Za-z0-9_]*)\Z', argstr)
            if not m2:
                raise ProofError(f'line {lineno}: us needs "sigma" and a step name')
            steps.append(Step(name, kind, (m2.group(1), m2.group(2))))
        elif kind == "usr":
            m2 = re.match(r'([A-Za-z][A-Za-z0-9_]*)\s+"([^"]*)"\Z', argstr)
            if not m2:
                raise ProofError(f'line {lineno}: usr needs a rule name and "sigma"')
            steps.append(Step(name, kind, (m2.group(1), m2.group(2))))
        elif kind in ("mp", "infer"):
            steps.append(Step(name, kind, tuple(argstr.split())))
        elif kind == "allgen":
            ref, _, var = argstr.partition(" ")
            steps.append(Step(name, kind, (ref.strip(), var.strip())))
        elif kind == "br":
            m2 = re.match(r'([A-Za-z][A-Za-z0-9_]*)\s+"([^"]*)"\Z', argstr)
            if not m2:
                raise ProofError(f'line {lineno}: br needs a premise step and a quoted target')
            steps.append(Step(name, kind, (m2.group(1), parse_formula(m2.group(2)))))
        elif kind == "rename":
            parts = argstr.split()
            if len(parts) != 3:
                raise ProofError(f"line {lineno}: rename needs a step and two variables")
            steps.append(Step(name, kind, tuple(parts)))
        elif kind == "oracle":
            m2 = _QUOTED_RE.search(argstr)
            if not m2:
                raise ProofError(f"line {lineno}: oracle needs a quoted formula")
            steps.append(Step(name, kind, (parse_formula(m2.group(1)),)))
        else:
            raise ProofError(f"line {lineno}: unknown step kind {kind!r}")
    if goal is None:
        raise ProofError("script has no qed")
    return Script(steps, goal)


def _var(text: str) -> Variable:
    if text.endswith("'"):
        return Variable(text[:-1], 1)
    return Variable(text, 0)


def check_script(script: Script) -> Report:
    report = Report(accepted=False, goal=script.goal)
    env: dict[str, Union[Formula, Inference]] = {}

    def formula_of(ref: str) -> Formula:
        if ref not in env:
            raise ProofError(f"unknown step {ref!r}")
        val = env[ref]
        if isinstance(val, Inference):
            raise ProofError(f"step {ref!r} is a rule, not a formula")
        return val

    last: Optional[Formula] = None
    for step in script.steps:
        try:
            if step.kind == "axiom":
                if step.args[0] not in AXIOMS:
                    raise ProofError(f"unknown axiom {step.args[0]!r}")
                val = AXIOMS[step.args[0]]
            elif step.kind == "us":
                sigma = parse_subst(step.args[0])
                val = apply_us(sigma, formula_of(step.args[1]))
            elif step.kind == "usr":
                if step.args[0] not in RULES:
                    raise ProofError(f"unknown rule {step.args[0]!r}")
                val = apply_usr(parse_subst(step.args[1]), RULES[step.args[0]])
            elif step.kind == "infer":
                rule = env.get(step.args[0])
                if not isinstance(rule, Inference):
                    raise ProofError(f"step {step.args[0]!r} is not a rule")
                val = apply_infer(rule, tuple(formula_of(r) for r in step.args[1:]))
            elif step.kind == "mp":
                val = apply_mp(formula_of(step.args[0]), formula_of(step.args[1]))
            elif step.kind == "allgen":
                val = apply_allgen(formula_of(step.args[0]), _var(step.args[1]))
            elif step.kind == "br":
                val = apply_br(formula_of(step.args[0]), step.args[1])
            elif step.kind == "rename":
                val = uniform_rename(formula_of(step.args[0]),
                                     _var(step.args[1]), _var(step.args[2]))
            elif step.kind == "oracle":
                val = step.args[0]
                report.oracles.append(val)
            else:
                raise ProofError(f"unknown step kind {step.kind!r}")
        except (ProofError, ClashError, ValueError) as exc:
            report.error = str(exc)
            report.error_step = step.name
            return report
        env[step.name] = val
        report.derived[step.name] = val
        if not isinstance(val, Inference):
            last = val

    if last is None:
        report.error = "no formula derived"
        report.error_step = "qed"
        return report
    if last != script.goal:
        report.error = (f"final formula {pretty(last)} does not match "
                        f"goal {pretty(script.goal)}")
        report.error_step = "qed"
        return report
    report.accepted = True
    return report


def check_text(text: str) -> Report:
    try:
        script = parse_script(text)
    except (ProofError, ValueError) as exc:
        return Report(accepted=False, goal=None, error=str(exc), error_step="parse")
    return check_script(script)
