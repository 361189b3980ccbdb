"""Static analyses: free, bound and must-bound variables, signatures.

These are the syntactic overapproximations that drive substitution
admissibility.  Game symbols can do anything, so their free and bound
variable sets are the cofinite set of all variables, while their
must-bound set is empty.
"""

from __future__ import annotations

from .syntax import (
    And, Assign, Box, Choice, Cmp, Diamond, DiffGame, Differential, Dual,
    Equiv, Exists, Expr, FalseF, Forall, Formula, FuncApp, Game, GameSym,
    Imply, Loop, Neg, Not, Number, ODE, Or, Plus, Power, PredApp, Seq,
    Symbol, Term, Test, Times, TrueF, Var, children, iter_nodes,
)
from .varset import ALL, EMPTY, Variable, VarSet


def fv_term(t: Term) -> VarSet:
    """Free variables of a term; always a finite set."""
    match t:
        case Var(v):
            return VarSet.finite([v])
        case Number() | FuncApp(_, None):
            return EMPTY
        case FuncApp(_, arg):
            return fv_term(arg)
        case Plus(a, b) | Times(a, b):
            return fv_term(a) | fv_term(b)
        case Neg(a) | Power(a, _):
            return fv_term(a)
        case Differential(a):
            base = fv_term(a)
            return base | VarSet.finite(v.prime for v in base.iter_finite())
    raise TypeError(f"not a term: {t!r}")


def fv_formula(f: Formula, coarse: bool = False) -> VarSet:
    match f:
        case Cmp(_, a, b):
            return fv_term(a) | fv_term(b)
        case PredApp(_, None) | TrueF() | FalseF():
            return EMPTY
        case PredApp(_, arg):
            return fv_term(arg)
        case Not(a):
            return fv_formula(a, coarse)
        case And(a, b) | Or(a, b) | Imply(a, b) | Equiv(a, b):
            return fv_formula(a, coarse) | fv_formula(b, coarse)
        case Exists(v, a) | Forall(v, a):
            return fv_formula(a, coarse) - VarSet.finite([v])
        case Diamond(g, a) | Box(g, a):
            if coarse:
                return fv_game(g, coarse) | fv_formula(a, coarse)
            return fv_game(g) | (fv_formula(a) - mbv_game(g))
    raise TypeError(f"not a formula: {f!r}")


def fv_game(g: Game, coarse: bool = False) -> VarSet:
    match g:
        case GameSym():
            return ALL
        case Assign(_, t):
            return fv_term(t)
        case ODE(eqs, dom):
            out = fv_formula(dom, coarse)
            for x, rhs in eqs:
                out = out | VarSet.finite([x]) | fv_term(rhs)
            return out
        case Test(a):
            return fv_formula(a, coarse)
        case Choice(a, b):
            return fv_game(a, coarse) | fv_game(b, coarse)
        case Seq(a, b):
            if coarse:
                return fv_game(a, coarse) | fv_game(b, coarse)
            return fv_game(a) | (fv_game(b) - mbv_game(a))
        case Loop(a):
            return fv_game(a, coarse)
        case Dual(a):
            return fv_game(a, coarse)
        case DiffGame(eqs, y, y_in, z, z_in):
            out = fv_formula(y_in, coarse) | fv_formula(z_in, coarse)
            out = out | VarSet.finite([y, z])
            for x, rhs in eqs:
                out = out | VarSet.finite([x]) | fv_term(rhs)
            return out
    raise TypeError(f"not a game: {g!r}")


def bv_game(g: Game) -> VarSet:
    match g:
        case GameSym():
            return ALL
        case Assign(v, _):
            return VarSet.finite([v])
        case ODE(eqs, _):
            out = EMPTY
            for x, _ in eqs:
                out = out | VarSet.finite([x, x.prime])
            return out
        case Test(_):
            return EMPTY
        case Choice(a, b) | Seq(a, b):
            return bv_game(a) | bv_game(b)
        case Loop(a) | Dual(a):
            return bv_game(a)
        case DiffGame(eqs, y, _, z, _):
            out = VarSet.finite([y, y.prime, z, z.prime])
            for x, _ in eqs:
                out = out | VarSet.finite([x, x.prime])
            return out
    raise TypeError(f"not a game: {g!r}")


def mbv_game(g: Game) -> VarSet:
    """Variables bound on every way of playing the game."""
    match g:
        case GameSym():
            return EMPTY
        case Assign() | ODE() | DiffGame():
            return bv_game(g)
        case Test(_):
            return EMPTY
        case Choice(a, b):
            return mbv_game(a) & mbv_game(b)
        case Seq(a, b):
            return mbv_game(a) | mbv_game(b)
        case Loop(_):
            return EMPTY
        case Dual(a):
            return mbv_game(a)
    raise TypeError(f"not a game: {g!r}")


def signature(e: Expr) -> frozenset[Symbol]:
    """All function, predicate and game symbols occurring in ``e``."""
    out = set()
    for n in iter_nodes(e):
        match n:
            case FuncApp(s, _) | PredApp(s, _) | GameSym(s):
                out.add(s)
    return frozenset(out)


def occurring_vars(e: Expr) -> VarSet:
    """Every variable occurring anywhere, free, bound or as a binder."""
    out: set[Variable] = set()
    for n in iter_nodes(e):
        match n:
            case Var(v):
                out.add(v)
            case Exists(v, _) | Forall(v, _) | Assign(v, _):
                out.add(v)
            case ODE(eqs, _):
                out.update(x for x, _ in eqs)
                out.update(x.prime for x, _ in eqs)
            case DiffGame(eqs, y, _, z, _):
                out.update(x for x, _ in eqs)
                out.update(x.prime for x, _ in eqs)
                out.update((y, y.prime, z, z.prime))
    return VarSet.finite(out)
