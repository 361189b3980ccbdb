"""Reference substitution with per-operator admissibility checks.

This is the classical formulation: at every binding operator, the
substitution must be admissible for the scope, meaning no replacement of a
symbol occurring in the scope has a free variable the operator binds.
Bound-variable sets and symbol occurrences are deliberately recomputed at
every operator without caching, so runtime grows quadratically on chains
of binders; the one-pass engine in :mod:`dgl.subst` is the fast path this
implementation cross-checks.
"""

from __future__ import annotations

from .statics import bv_game
from .subst import ClashError, ClashInfo, USubst
from .syntax import (
    And, Assign, Box, Choice, Cmp, Diamond, DiffGame, Differential, DOT,
    Dual, Equiv, Exists, FalseF, Forall, Formula, FuncApp, Game, GameSym,
    Imply, Loop, Neg, Not, Number, ODE, Or, Plus, Power, PredApp, Seq,
    Term, Test, Times, TrueF, Var, iter_nodes,
)
from .varset import ALL, EMPTY, VarSet, Variable

#: counts of nodes visited by admissibility scans, for instrumentation
COUNTERS = {"scan": 0, "node": 0}


def reset_counters() -> None:
    for k in COUNTERS:
        COUNTERS[k] = 0


def _admissible(sigma: USubst, bound: VarSet, scope) -> None:
    """Fail unless sigma is ``bound``-admissible for ``scope``: replacements
    of function and predicate symbols occurring in the scope must not have
    free variables in ``bound``."""
    for n in iter_nodes(scope):
        COUNTERS["node"] += 1
        match n:
            case FuncApp(sym, _) | PredApp(sym, _):
                if sym in sigma and sym.kind != "game":
                    fv = sigma.fv[sym]
                    meet = fv & bound
                    if not meet.is_empty:
                        witness = (next(iter(meet.members)) if not meet.cofinite
                                   else Variable("x", 0))
                        raise ClashError(ClashInfo(sym, fv, bound, witness, ()))


def _dotted(repl, arg):
    if arg is None:
        return repl
    inner = USubst({DOT: arg})
    if isinstance(repl, (Cmp, PredApp, TrueF, FalseF, Not, And, Or, Imply,
                         Equiv, Exists, Forall, Diamond, Box)):
        return church_formula(inner, repl)
    return church_term(inner, repl)


def church_term(sigma: USubst, t: Term) -> Term:
    COUNTERS["scan"] += 1
    match t:
        case Var() | Number():
            return t
        case FuncApp(sym, arg):
            new_arg = None if arg is None else church_term(sigma, arg)
            if sym in sigma:
                return _dotted(sigma.entries[sym], new_arg)
            return FuncApp(sym, new_arg)
        case Plus(a, b):
            return Plus(church_term(sigma, a), church_term(sigma, b))
        case Times(a, b):
            return Times(church_term(sigma, a), church_term(sigma, b))
        case Neg(a):
            return Neg(church_term(sigma, a))
        case Power(a, k):
            return Power(church_term(sigma, a), k)
        case Differential(a):
            _admissible(sigma, ALL, a)
            return Differential(church_term(sigma, a))
    raise TypeError(f"not a term: {t!r}")


def church_formula(sigma: USubst, f: Formula) -> Formula:
    COUNTERS["scan"] += 1
    match f:
        case TrueF() | FalseF():
            return f
        case Cmp(op, a, b):
            return Cmp(op, church_term(sigma, a), church_term(sigma, b))
        case PredApp(sym, arg):
            new_arg = None if arg is None else church_term(sigma, arg)
            if sym in sigma:
                return _dotted(sigma.entries[sym], new_arg)
            return PredApp(sym, new_arg)
        case Not(a):
            return Not(church_formula(sigma, a))
        case And(a, b):
            return And(church_formula(sigma, a), church_formula(sigma, b))
        case Or(a, b):
            return Or(church_formula(sigma, a), church_formula(sigma, b))
        case Imply(a, b):
            return Imply(church_formula(sigma, a), church_formula(sigma, b))
        case Equiv(a, b):
            return Equiv(church_formula(sigma, a), church_formula(sigma, b))
        case Exists(v, a):
            _admissible(sigma, VarSet.finite([v]), a)
            return Exists(v, church_formula(sigma, a))
        case Forall(v, a):
            _admissible(sigma, VarSet.finite([v]), a)
            return Forall(v, church_formula(sigma, a))
        case Diamond(g, a):
            ng = church_game(sigma, g)
            _admissible(sigma, bv_game(ng), a)
            return Diamond(ng, church_formula(sigma, a))
        case Box(g, a):
            ng = church_game(sigma, g)
            _admissible(sigma, bv_game(ng), a)
            return Box(ng, church_formula(sigma, a))
    raise TypeError(f"not a formula: {f!r}")


def church_game(sigma: USubst, g: Game) -> Game:
    COUNTERS["scan"] += 1
    match g:
        case GameSym(sym):
            if sym in sigma:
                return sigma.entries[sym]
            return g
        case Assign(v, t):
            return Assign(v, church_term(sigma, t))
        case ODE(eqs, dom):
            bound = EMPTY
            for x, _ in eqs:
                bound = bound.add(x).add(x.prime)
            for _, rhs in eqs:
                _admissible(sigma, bound, rhs)
            _admissible(sigma, bound, dom)
            return ODE(tuple((x, church_term(sigma, rhs)) for x, rhs in eqs),
                       church_formula(sigma, dom))
        case Test(c):
            return Test(church_formula(sigma, c))
        case Choice(a, b):
            return Choice(church_game(sigma, a), church_game(sigma, b))
        case Seq(a, b):
            na = church_game(sigma, a)
            _admissible(sigma, bv_game(na), b)
            return Seq(na, church_game(sigma, b))
        case Loop(a):
            na = church_game(sigma, a)
            _admissible(sigma, bv_game(na), a)
            return Loop(na)
        case Dual(a):
            return Dual(church_game(sigma, a))
        case DiffGame(eqs, y, y_in, z, z_in):
            bound = VarSet.finite([y, y.prime, z, z.prime])
            for x, _ in eqs:
                bound = bound.add(x).add(x.prime)
            for _, rhs in eqs:
                _admissible(sigma, bound, rhs)
            _admissible(sigma, bound, y_in)
            _admissible(sigma, bound, z_in)
            return DiffGame(tuple((x, church_term(sigma, rhs)) for x, rhs in eqs),
                            y, church_formula(sigma, y_in),
                            z, church_formula(sigma, z_in))
    raise TypeError(f"not a game: {g!r}")
