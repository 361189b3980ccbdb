"""Canonical pretty-printer with minimal parentheses.

``parse(pretty(e)) == e`` for every well-formed expression; the printer is
the normal form the regression tests compare against.  ``Plus(a, Neg(b))``
prints as ``a-b``, matching how the parser reads binary minus.
"""

from __future__ import annotations

from .syntax import (
    And, Assign, Box, Choice, Cmp, Diamond, DiffGame, Differential, Dual,
    Equiv, Exists, Expr, FalseF, Forall, Formula, FuncApp, Game, GameSym,
    Imply, Loop, Neg, Not, Number, ODE, Or, Plus, Power, PredApp, Seq,
    Term, Test, Times, TrueF, TRUE, Var,
)

# term precedence levels
_SUM, _PROD, _UNARY, _POST, _ATOM = 0, 1, 2, 3, 4
# formula levels
_EQUIV, _IMPLY, _OR, _AND, _FUNARY, _FATOM = 0, 1, 2, 3, 4, 5
# game levels
_CHOICE, _SEQ, _GPOST, _GATOM = 0, 1, 2, 3


def pretty(e: Expr) -> str:
    match e:
        case Var() | Number() | FuncApp() | Plus() | Times() | Neg() | Power() | Differential():
            return _term(e, _SUM)
        case GameSym() | Assign() | ODE() | Test() | Choice() | Seq() | Loop() | Dual() | DiffGame():
            return _game(e, _CHOICE)
        case _:
            return _formula(e, _EQUIV)


def _paren(s: str, have: int, need: int) -> str:
    return s if have >= need else "(" + s + ")"


def _term(t: Term, need: int) -> str:
    match t:
        case Var(v):
            return str(v)
        case Number(v):
            return str(v)
        case FuncApp(s, None):
            return "." if s.name == "." else s.name + "()"
        case FuncApp(s, arg):
            return f"{s.name}({_term(arg, _SUM)})"
        case Plus(a, Neg(b)):
            return _paren(_term(a, _SUM) + "-" + _term(b, _PROD), _SUM, need)
        case Plus(a, b):
            return _paren(_term(a, _SUM) + "+" + _term(b, _PROD), _SUM, need)
        case Times(a, b):
            return _paren(_term(a, _PROD) + "*" + _term(b, _UNARY), _PROD, need)
        case Neg(a):
            return _paren("-" + _term(a, _UNARY), _UNARY, need)
        case Power(a, k):
            return _paren(_term(a, _ATOM) + "^" + str(k), _POST, need)
        case Differential(a):
            return "(" + _term(a, _SUM) + ")'"
    raise TypeError(f"not a term: {t!r}")


def _formula(f: Formula, need: int, guard: bool = False) -> str:
    """``guard`` means the text lands inside an enclosing ``<game>`` span,
    where a bare ``>`` comparison would close the modality early."""
    match f:
        case TrueF():
            return "true"
        case FalseF():
            return "false"
        case Cmp(op, a, b):
            s = _term(a, _SUM) + op + _term(b, _SUM)
            return "(" + s + ")" if guard and op == ">" else s
        case PredApp(s, None):
            return s.name + "()"
        case PredApp(s, arg):
            return f"{s.name}({_term(arg, _SUM)})"
        case Not(a):
            return _paren("!" + _formula(a, _FUNARY, guard), _FUNARY, need)
        case And(a, b):
            return _paren(_formula(a, _AND, guard) + " & " + _formula(b, _FUNARY, guard), _AND, need)
        case Or(a, b):
            return _paren(_formula(a, _OR, guard) + " | " + _formula(b, _AND, guard), _OR, need)
        case Imply(a, b):
            return _paren(_formula(a, _OR, guard) + " -> " + _formula(b, _IMPLY, guard), _IMPLY, need)
        case Equiv(a, b):
            return _paren(_formula(a, _IMPLY, guard) + " <-> " + _formula(b, _EQUIV, guard), _EQUIV, need)
        case Exists(v, a):
            return _paren(f"\\exists {v} " + _formula(a, _FUNARY, guard), _FUNARY, need)
        case Forall(v, a):
            return _paren(f"\\forall {v} " + _formula(a, _FUNARY, guard), _FUNARY, need)
        case Diamond(g, a):
            return _paren("<" + _game(g, _CHOICE) + ">" + _formula(a, _FUNARY, guard), _FUNARY, need)
        case Box(g, a):
            return _paren("[" + _game(g, _CHOICE) + "]" + _formula(a, _FUNARY, guard), _FUNARY, need)
    raise TypeError(f"not a formula: {f!r}")


def _eqs(eqs) -> str:
    return ", ".join(f"{x}'={_term(rhs, _SUM)}" for x, rhs in eqs)


def _game(g: Game, need: int) -> str:
    match g:
        case GameSym(s):
            return s.name
        case Assign(v, t):
            return f"{v}:={_term(t, _SUM)}"
        case Test(c):
            return "?" + _formula(c, _EQUIV, guard=True)
        case ODE(eqs, dom):
            if dom == TRUE:
                return _eqs(eqs)
            return "{" + _eqs(eqs) + " & " + _formula(dom, _EQUIV) + "}"
        case DiffGame(eqs, y, y_in, z, z_in):
            return ("{" + _eqs(eqs) + f" &d {y} in (" + _formula(y_in, _EQUIV)
                    + f") & {z} in (" + _formula(z_in, _EQUIV) + ")}")
        case Seq(a, b):
            return _paren_game(_game(a, _GPOST) + "; " + _game(b, _SEQ), _SEQ, need)
        case Choice(a, b):
            return _paren_game(_game(a, _SEQ) + " ++ " + _game(b, _CHOICE), _CHOICE, need)
        case Loop(b):
            return "{" + _game(b, _CHOICE) + "}*"
        case Dual(b):
            return "{" + _game(b, _CHOICE) + "}^d"
    raise TypeError(f"not a game: {g!r}")


def _paren_game(s: str, have: int, need: int) -> str:
    return s if have >= need else "{" + s + "}"
