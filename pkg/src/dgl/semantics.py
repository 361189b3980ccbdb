"""Exact semantic evaluation over the rationals.

Interpretations map function symbols to polynomial dot-terms and predicate
symbols to quantifier-free dot-formulas, both state-independent (no
variables besides the dot placeholder).  Differentials evaluate by
symbolic partial differentiation: (theta)' denotes the sum over base
variables x of nu(x') times d theta / d x.

The adjoint of a substitution reinterprets each substituted symbol as the
value of its replacement at an anchor state omega, as a function of the
dot argument.  Substituting and then evaluating at nu must agree with
evaluating the original expression under the adjoint interpretation; the
checkers below test exactly that, with exact arithmetic and no tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .subst import ClashError, USubst, subst_formula, subst_term
from .syntax import (
    And, Box, Cmp, Diamond, Differential, DOT, Equiv, Exists, FalseF, Forall,
    Formula, FuncApp, Imply, Neg, Not, Number, Or, Plus, Power, PredApp,
    Symbol, Term, Times, TrueF, Var, iter_nodes,
)
from .varset import Variable, VarSet


class EvalError(ValueError):
    """Evaluation hit an uninterpreted symbol or a non-evaluable node."""


@dataclass(frozen=True)
class State:
    """A variable assignment with finite support; unlisted variables are 0."""

    values: dict[Variable, Fraction] = field(default_factory=dict)

    def __getitem__(self, v: Variable) -> Fraction:
        return self.values.get(v, Fraction(0))

    def updated(self, v: Variable, val: Fraction) -> "State":
        new = dict(self.values)
        new[v] = val
        return State(new)

    @property
    def support(self) -> frozenset[Variable]:
        return frozenset(self.values)


class Interpretation:
    """Symbol meanings: polynomial dot-terms and quantifier-free dot-formulas."""

    def __init__(self, entries: dict[Symbol, object]):
        self.entries = dict(entries)
        for sym, body in self.entries.items():
            for n in iter_nodes(body):
                if isinstance(n, (Var, Differential)):
                    raise EvalError(f"interpretation of {sym} is not a closed polynomial")
                if isinstance(n, (FuncApp, PredApp)) and n.sym != DOT:
                    raise EvalError(f"interpretation of {sym} mentions symbol {n.sym}")

    def __contains__(self, sym: Symbol) -> bool:
        return sym in self.entries


def eval_term(interp: Interpretation, state: State, t: Term,
              dot: Optional[Fraction] = None) -> Fraction:
    match t:
        case Var(v):
            return state[v]
        case Number(v):
            return v
        case FuncApp(sym, arg):
            if sym == DOT:
                if dot is None:
                    raise EvalError("dot outside of a replacement")
                return dot
            if sym not in interp:
                raise EvalError(f"uninterpreted function symbol {sym}")
            d = None if arg is None else eval_term(interp, state, arg, dot)
            return eval_term(interp, state, interp.entries[sym], d)
        case Plus(a, b):
            return eval_term(interp, state, a, dot) + eval_term(interp, state, b, dot)
        case Times(a, b):
            return eval_term(interp, state, a, dot) * eval_term(interp, state, b, dot)
        case Neg(a):
            return -eval_term(interp, state, a, dot)
        case Power(a, k):
            return eval_term(interp, state, a, dot) ** k
        case Differential(a):
            poly = inline(interp, a, dot)
            total = Fraction(0)
            for v in sorted(_base_vars(poly), key=lambda v: (v.name, v.order)):
                total += state[v.prime] * eval_term(interp, state, diff(poly, v))
            return total
    raise TypeError(f"not a term: {t!r}")


def inline(interp: Interpretation, t: Term, dot: Optional[Fraction] = None) -> Term:
    """Expand interpreted symbols (and the dot) away, syntactically."""
    match t:
        case Var() | Number():
            return t
        case FuncApp(sym, arg):
            if sym == DOT:
                if dot is None:
                    raise EvalError("dot outside of a replacement")
                return _const(dot)
            if sym not in interp:
                raise EvalError(f"uninterpreted function symbol {sym}")
            body = interp.entries[sym]
            if arg is None:
                return body
            return _plug_dot(body, inline(interp, arg, dot))
        case Plus(a, b):
            return Plus(inline(interp, a, dot), inline(interp, b, dot))
        case Times(a, b):
            return Times(inline(interp, a, dot), inline(interp, b, dot))
        case Neg(a):
            return Neg(inline(interp, a, dot))
        case Power(a, k):
            return Power(inline(interp, a, dot), k)
        case Differential(a):
            # expand the inner differential symbolically so that nothing
            # interpreted remains under the outer one
            poly = inline(interp, a, dot)
            out: Term = Number(Fraction(0))
            for v in sorted(_base_vars(poly), key=lambda v: (v.name, v.order)):
                out = Plus(out, Times(Var(v.prime), diff(poly, v)))
            return out
    raise TypeError(f"not a term: {t!r}")


def _plug_dot(body: Term, arg: Term) -> Term:
    match body:
        case FuncApp(sym, None) if sym == DOT:
            return arg
        case Var() | Number():
            return body
        case Plus(a, b):
            return Plus(_plug_dot(a, arg), _plug_dot(b, arg))
        case Times(a, b):
            return Times(_plug_dot(a, arg), _plug_dot(b, arg))
        case Neg(a):
            return Neg(_plug_dot(a, arg))
        case Power(a, k):
            return Power(_plug_dot(a, arg), k)
    raise EvalError(f"not a closed polynomial: {body!r}")


def diff(t: Term, v: Variable) -> Term:
    """Symbolic partial derivative of a symbol-free polynomial term."""
    zero, one = Number(Fraction(0)), Number(Fraction(1))
    match t:
        case Var(w):
            return one if w == v else zero
        case Number(_):
            return zero
        case Plus(a, b):
            return Plus(diff(a, v), diff(b, v))
        case Times(a, b):
            return Plus(Times(diff(a, v), b), Times(a, diff(b, v)))
        case Neg(a):
            return Neg(diff(a, v))
        case Power(a, k):
            if k == 0:
                return zero
            return Times(Times(Number(Fraction(k)), Power(a, k - 1)), diff(a, v))
    raise EvalError(f"cannot differentiate {t!r}")


def _base_vars(t: Term) -> set[Variable]:
    out = set()
    for n in iter_nodes(t):
        if isinstance(n, Var) and n.var.order == 0:
            out.add(n.var)
    return out


def _const(x: Fraction) -> Term:
    return Neg(Number(-x)) if x < 0 else Number(x)


def eval_qff(interp: Interpretation, state: State, f: Formula,
             dot: Optional[Fraction] = None) -> bool:
    match f:
        case TrueF():
            return True
        case FalseF():
            return False
        case Cmp(op, a, b):
            x, y = eval_term(interp, state, a, dot), eval_term(interp, state, b, dot)
            return {
                ">=": x >= y, "<=": x <= y, "=": x == y,
                ">": x > y, "<": x < y, "!=": x != y,
            }[op]
        case PredApp(sym, arg):
            if sym not in interp:
                raise EvalError(f"uninterpreted predicate symbol {sym}")
            d = None if arg is None else eval_term(interp, state, arg, dot)
            return eval_qff(interp, state, interp.entries[sym], d)
        case Not(a):
            return not eval_qff(interp, state, a, dot)
        case And(a, b):
            return eval_qff(interp, state, a, dot) and eval_qff(interp, state, b, dot)
        case Or(a, b):
            return eval_qff(interp, state, a, dot) or eval_qff(interp, state, b, dot)
        case Imply(a, b):
            return (not eval_qff(interp, state, a, dot)) or eval_qff(interp, state, b, dot)
        case Equiv(a, b):
            return eval_qff(interp, state, a, dot) == eval_qff(interp, state, b, dot)
        case Exists() | Forall() | Diamond() | Box():
            raise EvalError("only quantifier-free formulas are evaluable")
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# adjoint interpretations


def anchor_term(sigma_repl: Term, interp: Interpretation, omega: State) -> Term:
    """Turn a replacement term into a closed dot-polynomial by expanding
    differentials symbolically and freezing all variables at omega."""
    expanded = _expand(sigma_repl, interp)
    return _ground(expanded, omega)


def _expand(t: Term, interp: Interpretation) -> Term:
    """Inline interpreted symbols and differentials, keeping variables and
    the dot symbolic."""
    match t:
        case Var() | Number():
            return t
        case FuncApp(sym, arg):
            if sym == DOT:
                return t
            if sym not in interp:
                raise EvalError(f"uninterpreted function symbol {sym}")
            body = interp.entries[sym]
            if arg is None:
                return body
            return _plug_dot(body, _expand(arg, interp))
        case Plus(a, b):
            return Plus(_expand(a, interp), _expand(b, interp))
        case Times(a, b):
            return Times(_expand(a, interp), _expand(b, interp))
        case Neg(a):
            return Neg(_expand(a, interp))
        case Power(a, k):
            return Power(_expand(a, interp), k)
        case Differential(a):
            poly = _expand(a, interp)
            out: Term = Number(Fraction(0))
            for v in sorted(_base_vars(poly), key=lambda v: (v.name, v.order)):
                out = Plus(out, Times(Var(v.prime), _diff_with_dot(poly, v)))
            return out
    raise TypeError(f"not a term: {t!r}")


def _diff_with_dot(t: Term, v: Variable) -> Term:
    """Derivative treating the dot placeholder as a constant symbol."""
    match t:
        case FuncApp(sym, None) if sym == DOT:
            return Number(Fraction(0))
        case _:
            pass
    zero, one = Number(Fraction(0)), Number(Fraction(1))
    match t:
        case Var(w):
            return one if w == v else zero
        case Number(_):
            return zero
        case Plus(a, b):
            return Plus(_diff_with_dot(a, v), _diff_with_dot(b, v))
        case Times(a, b):
            return Plus(Times(_diff_with_dot(a, v), b), Times(a, _diff_with_dot(b, v)))
        case Neg(a):
            return Neg(_diff_with_dot(a, v))
        case Power(a, k):
            if k == 0:
                return zero
            return Times(Times(Number(Fraction(k)), Power(a, k - 1)), _diff_with_dot(a, v))
    raise EvalError(f"cannot differentiate {t!r}")


def _ground(t: Term, omega: State) -> Term:
    match t:
        case Var(v):
            return _const(omega[v])
        case Number() | FuncApp():
            return t  # only the dot survives _expand
        case Plus(a, b):
            return Plus(_ground(a, omega), _ground(b, omega))
        case Times(a, b):
            return Times(_ground(a, omega), _ground(b, omega))
        case Neg(a):
            return Neg(_ground(a, omega))
        case Power(a, k):
            return Power(_ground(a, omega), k)
    raise EvalError(f"cannot anchor {t!r}")


def _anchor_formula(f: Formula, interp: Interpretation, omega: State) -> Formula:
    match f:
        case TrueF() | FalseF():
            return f
        case Cmp(op, a, b):
            return Cmp(op, anchor_term(a, interp, omega), anchor_term(b, interp, omega))
        case PredApp(sym, arg):
            if sym not in interp:
                raise EvalError(f"uninterpreted predicate symbol {sym}")
            body = interp.entries[sym]
            if arg is None:
                return body
            return _plug_dot_formula(body, _ground(_expand(arg, interp), omega))
        case Not(a):
            return Not(_anchor_formula(a, interp, omega))
        case And(a, b):
            return And(_anchor_formula(a, interp, omega), _anchor_formula(b, interp, omega))
        case Or(a, b):
            return Or(_anchor_formula(a, interp, omega), _anchor_formula(b, interp, omega))
        case Imply(a, b):
            return Imply(_anchor_formula(a, interp, omega), _anchor_formula(b, interp, omega))
        case Equiv(a, b):
            return Equiv(_anchor_formula(a, interp, omega), _anchor_formula(b, interp, omega))
    raise EvalError("only quantifier-free replacements have adjoint values")


def _plug_dot_formula(body: Formula, arg: Term) -> Formula:
    match body:
        case TrueF() | FalseF():
            return body
        case Cmp(op, a, b):
            return Cmp(op, _plug_dot(a, arg), _plug_dot(b, arg))
        case Not(a):
            return Not(_plug_dot_formula(a, arg))
        case And(a, b):
            return And(_plug_dot_formula(a, arg), _plug_dot_formula(b, arg))
        case Or(a, b):
            return Or(_plug_dot_formula(a, arg), _plug_dot_formula(b, arg))
        case Imply(a, b):
            return Imply(_plug_dot_formula(a, arg), _plug_dot_formula(b, arg))
        case Equiv(a, b):
            return Equiv(_plug_dot_formula(a, arg), _plug_dot_formula(b, arg))
    raise EvalError(f"not a quantifier-free dot-formula: {body!r}")


def adjoint_interpretation(sigma: USubst, interp: Interpretation,
                           omega: State) -> Interpretation:
    """The interpretation that gives every substituted symbol the meaning of
    its replacement, anchored at omega."""
    entries = dict(interp.entries)
    for sym, repl in sigma.entries.items():
        if sym.kind == "func":
            entries[sym] = anchor_term(repl, interp, omega)
        elif sym.kind == "pred":
            entries[sym] = _anchor_formula(repl, interp, omega)
        else:
            raise EvalError("game symbols have no pointwise adjoint value")
    return Interpretation(entries)


def adjoint_eval_term(sigma: USubst, interp: Interpretation, omega: State,
                      nu: State, t: Term) -> Fraction:
    return eval_term(adjoint_interpretation(sigma, interp, omega), nu, t)


def adjoint_eval_qff(sigma: USubst, interp: Interpretation, omega: State,
                     nu: State, f: Formula) -> bool:
    return eval_qff(adjoint_interpretation(sigma, interp, omega), nu, f)


# ---------------------------------------------------------------------------
# variation sampling and substitution-value checks


def sample_variation(omega: State, taboo: VarSet, rng: random.Random,
                     pool=()) -> State:
    """A state that agrees with omega outside the taboo set and takes fresh
    values on taboo variables (drawn from the support and ``pool``)."""
    vars_of_interest = set(omega.support) | set(pool)
    values = dict(omega.values)
    for v in sorted(vars_of_interest, key=lambda v: (v.name, v.order)):
        if v in taboo:
            values[v] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return State(values)


@dataclass
class CheckReport:
    passed: bool
    trials: int
    counterexample: Optional[dict] = None


def check_substitution_value_term(sigma: USubst, taboo: VarSet, t: Term,
                                  interp: Interpretation, omega: State,
                                  rng: random.Random, variations: int = 3,
                                  pool=()) -> CheckReport:
    """On a taboo-respecting substitution, substituting then evaluating at a
    U-variation must equal evaluating under the adjoint anchored at omega."""
    try:
        substituted = subst_term(sigma, taboo, t)
    except ClashError:
        return CheckReport(True, 0)  # nothing to check when undefined
    adj = adjoint_interpretation(sigma, interp, omega)
    done = 0
    for _ in range(variations):
        nu = sample_variation(omega, taboo, rng, pool)
        lhs = eval_term(interp, nu, substituted)
        rhs = eval_term(adj, nu, t)
        done += 1
        if lhs != rhs:
            return CheckReport(False, done, {
                "term": t, "substituted": substituted, "nu": nu,
                "lhs": lhs, "rhs": rhs})
    return CheckReport(True, done)


def check_substitution_value_qff(sigma: USubst, taboo: VarSet, f: Formula,
                                 interp: Interpretation, omega: State,
                                 rng: random.Random, variations: int = 3,
                                 pool=()) -> CheckReport:
    try:
        substituted = subst_formula(sigma, taboo, f)
    except ClashError:
        return CheckReport(True, 0)
    adj = adjoint_interpretation(sigma, interp, omega)
    done = 0
    for _ in range(variations):
        nu = sample_variation(omega, taboo, rng, pool)
        lhs = eval_qff(interp, nu, substituted)
        rhs = eval_qff(adj, nu, f)
        done += 1
        if lhs != rhs:
            return CheckReport(False, done, {
                "formula": f, "substituted": substituted, "nu": nu,
                "lhs": lhs, "rhs": rhs})
    return CheckReport(True, done)
