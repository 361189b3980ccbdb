"""Abstract syntax of differential game logic.

Terms, formulas and hybrid games are immutable trees with structural
equality.  Binary minus is represented as ``Plus(a, Neg(b))``; the printer
renders that back as ``a-b``, so there is no separate subtraction node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .varset import Variable

# ---------------------------------------------------------------------------
# symbols

FUNC = "func"
PRED = "pred"
GAME = "game"


@dataclass(frozen=True, slots=True)
class Symbol:
    kind: str
    name: str
    arity: int

    def __str__(self) -> str:
        return self.name


#: The reserved argument placeholder of unary replacements.
DOT = Symbol(FUNC, ".", 0)


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True, slots=True)
class Var:
    var: Variable


@dataclass(frozen=True, slots=True)
class Number:
    value: Fraction


@dataclass(frozen=True, slots=True)
class FuncApp:
    sym: Symbol
    arg: Optional["Term"] = None


@dataclass(frozen=True, slots=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Times:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Power:
    base: "Term"
    exp: int


@dataclass(frozen=True, slots=True)
class Differential:
    arg: "Term"


Term = Union[Var, Number, FuncApp, Plus, Times, Neg, Power, Differential]


def num(value) -> Number:
    return Number(Fraction(value))


def dot() -> FuncApp:
    return FuncApp(DOT)


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True, slots=True)
class Cmp:
    op: str  # one of >=, <=, =, >, <, !=
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class PredApp:
    sym: Symbol
    arg: Optional[Term] = None


@dataclass(frozen=True, slots=True)
class TrueF:
    pass


@dataclass(frozen=True, slots=True)
class FalseF:
    pass


@dataclass(frozen=True, slots=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imply:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Equiv:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: Variable
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Forall:
    var: Variable
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Diamond:
    game: "Game"
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Box:
    game: "Game"
    body: "Formula"


Formula = Union[
    Cmp, PredApp, TrueF, FalseF, Not, And, Or, Imply, Equiv,
    Exists, Forall, Diamond, Box,
]

TRUE = TrueF()
FALSE = FalseF()

CMP_OPS = (">=", "<=", "!=", "=", ">", "<")


# ---------------------------------------------------------------------------
# games


@dataclass(frozen=True, slots=True)
class GameSym:
    sym: Symbol


@dataclass(frozen=True, slots=True)
class Assign:
    var: Variable
    term: Term


@dataclass(frozen=True, slots=True)
class ODE:
    """{x'=e, y'=e2, ... & psi}; the domain defaults to true."""

    eqs: tuple[tuple[Variable, Term], ...]
    domain: Formula = TRUE


@dataclass(frozen=True, slots=True)
class Test:
    cond: Formula


@dataclass(frozen=True, slots=True)
class Choice:
    left: "Game"
    right: "Game"


@dataclass(frozen=True, slots=True)
class Seq:
    left: "Game"
    right: "Game"


@dataclass(frozen=True, slots=True)
class Loop:
    body: "Game"


@dataclass(frozen=True, slots=True)
class Dual:
    body: "Game"


@dataclass(frozen=True, slots=True)
class DiffGame:
    """{x'=e &d y in (Y) & z in (Z)}: an ODE whose right-hand sides may
    mention the Demon control y constrained by Y and the Angel control z
    constrained by Z."""

    eqs: tuple[tuple[Variable, Term], ...]
    y: Variable
    y_in: Formula
    z: Variable
    z_in: Formula


Game = Union[GameSym, Assign, ODE, Test, Choice, Seq, Loop, Dual, DiffGame]

Expr = Union[Term, Formula, Game]


# ---------------------------------------------------------------------------
# generic traversal

def children(e: Expr) -> tuple[Expr, ...]:
    """The direct sub-expressions of a node (ODE right-hand sides, domains,
    control constraints included; variables and symbols are not nodes)."""
    match e:
        case Var() | Number() | TrueF() | FalseF() | GameSym():
            return ()
        case FuncApp(_, arg) | PredApp(_, arg):
            return () if arg is None else (arg,)
        case Plus(a, b) | Times(a, b) | Cmp(_, a, b):
            return (a, b)
        case Neg(a) | Power(a, _) | Differential(a) | Not(a) | Test(a) | Loop(a) | Dual(a):
            return (a,)
        case And(a, b) | Or(a, b) | Imply(a, b) | Equiv(a, b) | Choice(a, b) | Seq(a, b):
            return (a, b)
        case Exists(_, a) | Forall(_, a):
            return (a,)
        case Diamond(g, a) | Box(g, a):
            return (g, a)
        case Assign(_, t):
            return (t,)
        case ODE(eqs, dom):
            return tuple(rhs for _, rhs in eqs) + (dom,)
        case DiffGame(eqs, _, y_in, _, z_in):
            return tuple(rhs for _, rhs in eqs) + (y_in, z_in)
    raise TypeError(f"not an expression: {e!r}")


def iter_nodes(e: Expr) -> Iterator[Expr]:
    """All nodes of the tree, iteratively (safe on very deep trees)."""
    stack = [e]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(children(n))


def node_count(e: Expr) -> int:
    return sum(1 for _ in iter_nodes(e))


# ---------------------------------------------------------------------------
# well-formedness

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RESERVED = {"true", "false", "in"}


def well_formed(e: Expr) -> list[tuple[str, str]]:
    """All structural violations in ``e`` as ``(path, message)`` pairs.

    The empty list means the expression is well-formed.  The checks are
    closed under subterm extraction: a well-formed tree has only
    well-formed subtrees.
    """
    out: list[tuple[str, str]] = []
    _wf(e, "", out, in_diff=False)
    return out


def _wf_var(v: Variable, path: str, out: list, orders=(0, 1)) -> None:
    if not isinstance(v, Variable):
        out.append((path, f"not a Variable: {v!r}"))
        return
    if not _NAME_RE.match(v.name) or v.name in _RESERVED:
        out.append((path, f"bad variable name {v.name!r}"))
    if v.order not in orders:
        out.append((path, f"variable order {v.order} not allowed here"))


def _wf_sym(s: Symbol, kind: str, path: str, out: list) -> None:
    if s.kind != kind:
        out.append((path, f"symbol {s.name} has kind {s.kind}, expected {kind}"))
    if s.arity not in (0, 1):
        out.append((path, f"symbol {s.name} has arity {s.arity}, expected 0 or 1"))
    if s is not DOT and s != DOT and (not _NAME_RE.match(s.name) or s.name in _RESERVED):
        out.append((path, f"bad symbol name {s.name!r}"))


def _wf(e: Expr, path: str, out: list, in_diff: bool) -> None:
    match e:
        case Var(v):
            _wf_var(v, path, out)
            if in_diff and isinstance(v, Variable) and v.order == 1:
                out.append((path, "differential variable inside a differential"))
        case Number(v):
            if not isinstance(v, Fraction):
                out.append((path, f"number value {v!r} is not a Fraction"))
        case FuncApp(s, arg):
            _wf_sym(s, FUNC, path, out)
            if (arg is None) != (s.arity == 0):
                out.append((path, f"arity mismatch for {s.name}"))
            if arg is not None:
                _wf(arg, path + ".arg", out, in_diff)
        case Plus(a, b) | Times(a, b):
            _wf(a, path + ".left", out, in_diff)
            _wf(b, path + ".right", out, in_diff)
        case Neg(a):
            _wf(a, path + ".arg", out, in_diff)
        case Power(a, k):
            if not isinstance(k, int) or k < 0:
                out.append((path, f"exponent {k!r} is not a nonnegative int"))
            _wf(a, path + ".base", out, in_diff)
        case Differential(a):
            if in_diff:
                out.append((path, "nested differential"))
            _wf(a, path + ".arg", out, True)
        case Cmp(op, a, b):
            if op not in CMP_OPS:
                out.append((path, f"unknown comparison {op!r}"))
            _wf(a, path + ".left", out, False)
            _wf(b, path + ".right", out, False)
        case PredApp(s, arg):
            _wf_sym(s, PRED, path, out)
            if (arg is None) != (s.arity == 0):
                out.append((path, f"arity mismatch for {s.name}"))
            if arg is not None:
                _wf(arg, path + ".arg", out, False)
        case TrueF() | FalseF():
            pass
        case Not(a):
            _wf(a, path + ".arg", out, False)
        case And(a, b) | Or(a, b) | Imply(a, b) | Equiv(a, b):
            _wf(a, path + ".left", out, False)
            _wf(b, path + ".right", out, False)
        case Exists(v, a) | Forall(v, a):
            _wf_var(v, path, out, orders=(0,))
            _wf(a, path + ".body", out, False)
        case Diamond(g, a) | Box(g, a):
            _wf(g, path + ".game", out, False)
            _wf(a, path + ".body", out, False)
        case GameSym(s):
            _wf_sym(s, GAME, path, out)
            if s.arity != 0:
                out.append((path, f"game symbol {s.name} must be nullary"))
        case Assign(v, t):
            _wf_var(v, path, out)
            _wf(t, path + ".term", out, False)
        case ODE(eqs, dom):
            _wf_ode_eqs(eqs, path, out)
            _wf(dom, path + ".domain", out, False)
        case Test(a):
            _wf(a, path + ".cond", out, False)
        case Choice(a, b) | Seq(a, b):
            _wf(a, path + ".left", out, False)
            _wf(b, path + ".right", out, False)
        case Loop(a) | Dual(a):
            _wf(a, path + ".body", out, False)
        case DiffGame(eqs, y, y_in, z, z_in):
            _wf_ode_eqs(eqs, path, out)
            _wf_var(y, path + ".y", out, orders=(0,))
            _wf_var(z, path + ".z", out, orders=(0,))
            if isinstance(y, Variable) and isinstance(z, Variable) and y == z:
                out.append((path, "control variables y and z coincide"))
            lhs = {x for x, _ in eqs if isinstance(x, Variable)}
            if y in lhs or z in lhs:
                out.append((path, "control variable also has an equation"))
            _wf(y_in, path + ".y_in", out, False)
            _wf(z_in, path + ".z_in", out, False)
            from .statics import fv_formula
            from .varset import VarSet
            if not well_formed(y_in) and not (fv_formula(y_in) - VarSet.finite([y])).is_empty:
                out.append((path + ".y_in", "constraint mentions variables other than the control"))
            if not well_formed(z_in) and not (fv_formula(z_in) - VarSet.finite([z])).is_empty:
                out.append((path + ".z_in", "constraint mentions variables other than the control"))
        case _:
            out.append((path, f"not an expression node: {e!r}"))


def _wf_ode_eqs(eqs, path: str, out: list) -> None:
    if not eqs:
        out.append((path, "empty equation list"))
    seen = set()
    for i, (x, rhs) in enumerate(eqs):
        _wf_var(x, f"{path}.eqs[{i}]", out, orders=(0,))
        if x in seen:
            out.append((f"{path}.eqs[{i}]", f"duplicate equation for {x}"))
        seen.add(x)
        _wf(rhs, f"{path}.eqs[{i}].rhs", out, False)
