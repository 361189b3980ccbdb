"""Seeded random expression, substitution and interpretation generators.

Everything is driven by an explicit ``random.Random`` so campaigns are
reproducible from a single seed.  Replacements are biased half-and-half
between clash-prone (mentioning bound-variable-pool variables free) and
clash-free (closed or dot-only) shapes.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .subst import USubst
from .syntax import (
    And, Assign, Box, Choice, Cmp, Diamond, DiffGame, Differential, DOT, Dual,
    Equiv,
    Exists, FALSE, Forall, Formula, FUNC, FuncApp, Game, GAME, GameSym,
    Imply, Loop, Neg, Not, Number, ODE, Or, Plus, Power, PRED, PredApp, Seq,
    Symbol, Term, Test, Times, TRUE, Var, dot,
)
from .varset import EMPTY, Variable, VarSet

VARS = tuple(Variable(n, 0) for n in ("x", "y", "z", "v", "w"))
FUNCS0 = (Symbol(FUNC, "f", 0), Symbol(FUNC, "g", 0))
FUNCS1 = (Symbol(FUNC, "f", 1), Symbol(FUNC, "g", 1))
PREDS0 = (Symbol(PRED, "p", 0), Symbol(PRED, "q", 0))
PREDS1 = (Symbol(PRED, "p", 1), Symbol(PRED, "q", 1))
GAMES = (Symbol(GAME, "a", 0), Symbol(GAME, "b", 0), Symbol(GAME, "c", 0))


def random_term(rng: random.Random, depth: int, allow_dot: bool = False,
                allow_symbols: bool = True, allow_diff: bool = True,
                vars: tuple[Variable, ...] = VARS) -> Term:
    leaf = depth <= 0
    choices = ["var", "num"]
    if allow_dot:
        choices.append("dot")
    if not leaf:
        choices += ["plus", "times", "neg", "minus"]
        if allow_symbols:
            choices += ["f0", "f1"]
        choices.append("pow")
        if allow_diff:
            choices.append("diff")
    kind = rng.choice(choices)
    if kind == "var":
        v = rng.choice(vars)
        if rng.random() < 0.12:
            v = v.prime
        return Var(v)
    if kind == "num":
        return Number(Fraction(rng.randint(0, 5)))
    if kind == "dot":
        return dot()
    if kind == "plus":
        return Plus(random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars),
                    random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars))
    if kind == "minus":
        return Plus(random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars),
                    Neg(random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars)))
    if kind == "times":
        return Times(random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars),
                     random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars))
    if kind == "neg":
        return Neg(random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars))
    if kind == "pow":
        return Power(random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars),
                     rng.randint(0, 3))
    if kind == "f0":
        return FuncApp(rng.choice(FUNCS0))
    if kind == "f1":
        return FuncApp(rng.choice(FUNCS1),
                       random_term(rng, depth - 1, allow_dot, allow_symbols, allow_diff, vars))
    # differentials may not contain differential variables or nested
    # differentials
    inner = random_term(rng, depth - 1, allow_dot, allow_symbols, False,
                        tuple(v.base for v in vars))
    return Differential(_strip_primes(inner))


def _strip_primes(t: Term) -> Term:
    match t:
        case Var(v) if v.order == 1:
            return Var(v.base)
        case Var() | Number() | FuncApp(_, None):
            return t
        case FuncApp(s, arg):
            return FuncApp(s, _strip_primes(arg))
        case Plus(a, b):
            return Plus(_strip_primes(a), _strip_primes(b))
        case Times(a, b):
            return Times(_strip_primes(a), _strip_primes(b))
        case Neg(a):
            return Neg(_strip_primes(a))
        case Power(a, k):
            return Power(_strip_primes(a), k)
        case Differential(a):
            return _strip_primes(a)
    return t


def random_formula(rng: random.Random, depth: int, allow_dot: bool = False,
                   allow_games: bool = True, allow_symbols: bool = True,
                   allow_quant: bool = True) -> Formula:
    leaf = depth <= 0
    choices = ["cmp", "true", "false"]
    if allow_symbols:
        choices += ["p0", "p1"]
    if not leaf:
        choices += ["not", "and", "or", "imply", "equiv"]
        if allow_quant:
            choices += ["exists", "forall"]
        if allow_games:
            choices += ["diamond", "box"]
    kind = rng.choice(choices)
    t = lambda: random_term(rng, max(depth - 1, 0), allow_dot, allow_symbols)
    f = lambda: random_formula(rng, depth - 1, allow_dot, allow_games,
                               allow_symbols, allow_quant)
    if kind == "cmp":
        return Cmp(rng.choice((">=", "<=", "=", ">", "<", "!=")), t(), t())
    if kind == "true":
        return TRUE
    if kind == "false":
        return FALSE
    if kind == "p0":
        return PredApp(rng.choice(PREDS0))
    if kind == "p1":
        return PredApp(rng.choice(PREDS1), t())
    if kind == "not":
        return Not(f())
    if kind == "and":
        return And(f(), f())
    if kind == "or":
        return Or(f(), f())
    if kind == "imply":
        return Imply(f(), f())
    if kind == "equiv":
        return Equiv(f(), f())
    if kind == "exists":
        return Exists(rng.choice(VARS), f())
    if kind == "forall":
        return Forall(rng.choice(VARS), f())
    g = random_game(rng, depth - 1, allow_dot, allow_symbols)
    return Diamond(g, f()) if kind == "diamond" else Box(g, f())


def random_game(rng: random.Random, depth: int, allow_dot: bool = False,
                allow_symbols: bool = True) -> Game:
    leaf = depth <= 0
    choices = ["assign", "test"]
    if allow_symbols:
        choices.append("sym")
    if not leaf:
        choices += ["ode", "choice", "seq", "loop", "dual", "diffgame"]
    kind = rng.choice(choices)
    t = lambda: random_term(rng, max(depth - 1, 0), allow_dot, allow_symbols)
    g = lambda: random_game(rng, depth - 1, allow_dot, allow_symbols)
    if kind == "sym":
        return GameSym(rng.choice(GAMES))
    if kind == "assign":
        v = rng.choice(VARS)
        if rng.random() < 0.1:
            v = v.prime
        return Assign(v, t())
    if kind == "test":
        return Test(random_formula(rng, depth - 1, allow_dot, True, allow_symbols))
    if kind == "ode":
        n = rng.randint(1, 2)
        xs = rng.sample(VARS, n)
        eqs = tuple((x, t()) for x in xs)
        domain = (random_formula(rng, min(depth - 1, 1), allow_dot, False, allow_symbols)
                  if rng.random() < 0.4 else TRUE)
        return ODE(eqs, domain)
    if kind == "choice":
        return Choice(g(), g())
    if kind == "seq":
        return Seq(g(), g())
    if kind == "loop":
        return Loop(g())
    if kind == "dual":
        return Dual(g())
    # differential game: controls are fresh from the equation variables
    x = rng.choice(VARS[:3])
    y, z = Variable("u", 0), Variable("w0", 0)
    y_in = And(Cmp("<=", Neg(Number(Fraction(1))), Var(y)),
               Cmp("<=", Var(y), Number(Fraction(1))))
    z_in = Cmp("<=", Times(Var(z), Var(z)), Number(Fraction(1)))
    return DiffGame(((x, t()),), y, y_in, z, z_in)


def random_usubst(rng: random.Random, clash_prone: float = 0.5,
                  game_depth: int = 2) -> USubst:
    """A substitution over the fixed symbol pool; each entry's replacement is
    clash-prone (mentions pool variables free) or closed, chosen at random."""
    entries = {}
    # one symbol per name so the table can be printed and reparsed
    for sym in (Symbol(FUNC, "f", 0), Symbol(FUNC, "g", 1),
                Symbol(PRED, "p", 0), Symbol(PRED, "q", 1),
                GAMES[0], GAMES[1]):
        if rng.random() < 0.45:
            continue
        if sym.kind == GAME:
            entries[sym] = random_game(rng, game_depth, False, False)
        elif sym.kind == FUNC:
            entries[sym] = _replacement_term(rng, sym.arity, clash_prone)
        else:
            entries[sym] = _replacement_formula(rng, sym.arity, clash_prone)
    return USubst(entries)


def _replacement_term(rng: random.Random, arity: int, clash_prone: float) -> Term:
    if rng.random() < clash_prone:
        return random_term(rng, 2, allow_dot=arity == 1, allow_symbols=False)
    # clash-free: closed polynomial in the dot
    if arity == 1 and rng.random() < 0.8:
        return Plus(Power(dot(), rng.randint(1, 2)), Number(Fraction(rng.randint(0, 3))))
    return Number(Fraction(rng.randint(0, 3)))


def _replacement_formula(rng: random.Random, arity: int, clash_prone: float) -> Formula:
    if rng.random() < clash_prone:
        return random_formula(rng, 2, allow_dot=arity == 1,
                              allow_games=True, allow_symbols=False)
    if arity == 1:
        return Cmp(">=", dot(), Number(Fraction(0)))
    return Cmp(">=", Number(Fraction(1)), Number(Fraction(0)))


def random_qff(rng: random.Random, depth: int, allow_dot: bool = False,
               allow_symbols: bool = True) -> Formula:
    """A quantifier- and modality-free formula (directly evaluable)."""
    return random_formula(rng, depth, allow_dot, allow_games=False,
                          allow_symbols=allow_symbols, allow_quant=False)


def random_fo_usubst(rng: random.Random, clash_prone: float = 0.5,
                     qff: bool = False) -> USubst:
    """A substitution with function and predicate keys only.  With ``qff``
    the predicate replacements stay quantifier- and modality-free, so both
    sides of the substitution remain evaluable."""
    entries = {}
    for sym in (Symbol(FUNC, "f", 0), Symbol(FUNC, "g", 1),
                Symbol(PRED, "p", 0), Symbol(PRED, "q", 1)):
        if rng.random() < 0.35:
            continue
        if sym.kind == FUNC:
            entries[sym] = _replacement_term(rng, sym.arity, clash_prone)
        elif qff:
            if rng.random() < clash_prone:
                entries[sym] = random_qff(rng, 2, allow_dot=sym.arity == 1,
                                          allow_symbols=False)
            else:
                entries[sym] = _clash_free_pred(rng, sym.arity)
        else:
            entries[sym] = _replacement_formula(rng, sym.arity, clash_prone)
    return USubst(entries)


def _clash_free_pred(rng: random.Random, arity: int) -> Formula:
    if arity == 1:
        return Cmp(">=", dot(), Number(Fraction(0)))
    return Cmp(">=", Number(Fraction(1)), Number(Fraction(0)))


def _closed_poly(rng: random.Random, arity: int) -> Term:
    base: Term = Number(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
    if arity == 1:
        base = Plus(Times(Number(Fraction(rng.randint(-2, 2))),
                          Power(dot(), rng.randint(1, 2))), base)
    return base


def random_interpretation(rng: random.Random):
    """Closed dot-polynomial meanings for every pool symbol."""
    from .semantics import Interpretation
    entries = {}
    for sym in FUNCS0 + FUNCS1:
        entries[sym] = _closed_poly(rng, sym.arity)
    for sym in PREDS0 + PREDS1:
        entries[sym] = Cmp(rng.choice((">=", "<", "=")),
                           _closed_poly(rng, sym.arity),
                           _closed_poly(rng, sym.arity))
    return Interpretation(entries)


def random_state(rng: random.Random, vars: tuple[Variable, ...] = VARS):
    from .semantics import State
    values = {}
    for v in vars:
        values[v] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        values[v.prime] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return State(values)


def random_taboo(rng: random.Random) -> VarSet:
    if rng.random() < 0.15:
        return VarSet.all_but(rng.sample([v for v in VARS] + [v.prime for v in VARS],
                                         rng.randint(0, 3)))
    picks = []
    for v in VARS:
        if rng.random() < 0.3:
            picks.append(v)
        if rng.random() < 0.15:
            picks.append(v.prime)
    return VarSet.finite(picks)
