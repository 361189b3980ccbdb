"""One-pass uniform substitution with taboo propagation.

The substitution recurses through the expression exactly once, carrying a
taboo set U of variables that must not be introduced free.  Clashes are
only checked where a replacement is actually inserted: the free variables
of the replacement have to be disjoint from the taboos accumulated at that
position.  Games additionally return an output taboo covering everything
they may write, which sequencing, modalities and loops feed forward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .statics import bv_game, fv_formula, fv_term
from .syntax import (
    And, Assign, Box, Choice, Cmp, Diamond, DiffGame, Differential, DOT,
    Dual, Equiv, Exists, FalseF, Forall, Formula, FuncApp, Game, GameSym,
    Imply, Loop, Neg, Not, Number, ODE, Or, Plus, Power, PredApp, Seq,
    Symbol, Term, Test, Times, TrueF, Var,
)
from .varset import ALL, EMPTY, Variable, VarSet

TWO_PASS = "two-pass"
BV_OPT = "bv"


class SubstError(ValueError):
    """A malformed substitution (bad key, bad replacement, duplicate)."""


@dataclass(frozen=True, slots=True)
class ClashInfo:
    sym: Symbol
    replacement_fv: VarSet
    taboo: VarSet
    witness: Variable
    path: tuple

    def __str__(self) -> str:
        where = ".".join(map(str, self.path)) or "top"
        return (f"clash: symbol {self.sym.name}, taboo {self.taboo}, "
                f"witness {{{self.witness}}}, at {where}")


class ClashError(Exception):
    def __init__(self, info: ClashInfo):
        self.info = info
        super().__init__(str(info))


class FixpointViolation(AssertionError):
    """Internal invariant failure: a loop's second pass changed the taboo."""


class USubst:
    """A uniform substitution: finitely many symbols mapped to replacements.

    Function symbols map to terms, predicate symbols to formulas (both may
    mention the reserved dot placeholder when the key is unary), game
    symbols to games.  Free-variable sets of term and formula replacements
    and bound-variable sets of game replacements are computed once here and
    reused at every replacement site.
    """

    __slots__ = ("entries", "fv", "bv")

    def __init__(self, entries: dict[Symbol, Union[Term, Formula, Game]]):
        self.entries = dict(entries)
        self.fv: dict[Symbol, VarSet] = {}
        self.bv: dict[Symbol, VarSet] = {}
        for sym, repl in self.entries.items():
            if sym == DOT:
                self.fv[sym] = fv_term(repl)
                continue
            if sym.kind == "func":
                self.fv[sym] = fv_term(repl)
            elif sym.kind == "pred":
                self.fv[sym] = fv_formula(repl)
            elif sym.kind == "game":
                self.bv[sym] = bv_game(repl)
            else:
                raise SubstError(f"unknown symbol kind {sym.kind!r}")
            if sym.arity == 0 and sym.kind != "game" and _mentions_dot(repl):
                raise SubstError(f"nullary {sym} has a dot in its replacement")

    def __contains__(self, sym: Symbol) -> bool:
        return sym in self.entries

    def __str__(self) -> str:
        from .printer import pretty
        parts = []
        for sym, repl in self.entries.items():
            if sym.kind == "game":
                parts.append(f"{sym.name} ~> {{{pretty(repl)}}}")
            else:
                key = sym.name + ("(.)" if sym.arity else "()")
                parts.append(f"{key} ~> {pretty(repl)}")
        return " ; ".join(parts)


def _mentions_dot(e) -> bool:
    from .syntax import iter_nodes
    return any(isinstance(n, FuncApp) and n.sym == DOT for n in iter_nodes(e))


#: traversal counters, for tests and instrumentation
COUNTERS = {"term": 0, "formula": 0, "game": 0}


def reset_counters() -> None:
    for k in COUNTERS:
        COUNTERS[k] = 0


def _clash(sigma: USubst, sym: Symbol, taboo: VarSet, path) -> None:
    rfv = sigma.fv[sym]
    meet = rfv & taboo
    if not meet.is_empty:
        witness = next(iter(meet.members)) if not meet.cofinite else next(iter(rfv.members), None)
        if witness is None:
            # both sets cofinite; any concrete variable outside the finite
            # exceptions witnesses the overlap
            witness = Variable("x", 0)
            while witness in meet.members:
                witness = Variable(witness.name + "0", 0)
        raise ClashError(ClashInfo(sym, rfv, taboo, witness, _path_list(path)))


def _path_list(path) -> tuple:
    out = []
    while path is not None:
        out.append(path[0])
        path = path[1]
    return tuple(reversed(out))


def _dotted(sigma: USubst, repl, arg: Optional[Term], orig_arg, path):
    """Insert the substituted argument for the dot, with an empty taboo."""
    if arg is None:
        return repl
    inner = USubst({DOT: arg})
    try:
        if isinstance(repl, (Cmp, PredApp, TrueF, FalseF, Not, And, Or, Imply,
                             Equiv, Exists, Forall, Diamond, Box)):
            return subst_formula(inner, EMPTY, repl, path)
        return subst_term(inner, EMPTY, repl, path)
    except ClashError as exc:
        if exc.info.sym == DOT and isinstance(orig_arg, FuncApp) and orig_arg.sym in sigma:
            # name the symbol whose replacement flowed into the taboo context
            raise ClashError(ClashInfo(orig_arg.sym, exc.info.replacement_fv,
                                       exc.info.taboo, exc.info.witness,
                                       exc.info.path)) from None
        raise


def subst_term(sigma: USubst, taboo: VarSet, t: Term, _path=None,
               loop_mode: str = TWO_PASS) -> Term:
    COUNTERS["term"] += 1
    match t:
        case Var() | Number():
            return t
        case FuncApp(sym, arg):
            new_arg = None if arg is None else subst_term(
                sigma, taboo, arg, ("arg", _path), loop_mode)
            if sym in sigma:
                _clash(sigma, sym, taboo, _path)
                return _dotted(sigma, sigma.entries[sym], new_arg, arg, _path)
            return t if new_arg is arg else FuncApp(sym, new_arg)
        case Plus(a, b):
            na = subst_term(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_term(sigma, taboo, b, ("right", _path), loop_mode)
            return t if na is a and nb is b else Plus(na, nb)
        case Times(a, b):
            na = subst_term(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_term(sigma, taboo, b, ("right", _path), loop_mode)
            return t if na is a and nb is b else Times(na, nb)
        case Neg(a):
            na = subst_term(sigma, taboo, a, ("arg", _path), loop_mode)
            return t if na is a else Neg(na)
        case Power(a, k):
            na = subst_term(sigma, taboo, a, ("base", _path), loop_mode)
            return t if na is a else Power(na, k)
        case Differential(a):
            # anything could be differentiated, so everything is taboo
            na = subst_term(sigma, ALL, a, ("arg", _path), loop_mode)
            return t if na is a else Differential(na)
    raise TypeError(f"not a term: {t!r}")


def subst_formula(sigma: USubst, taboo: VarSet, f: Formula, _path=None,
                  loop_mode: str = TWO_PASS) -> Formula:
    COUNTERS["formula"] += 1
    match f:
        case TrueF() | FalseF():
            return f
        case Cmp(op, a, b):
            na = subst_term(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_term(sigma, taboo, b, ("right", _path), loop_mode)
            return f if na is a and nb is b else Cmp(op, na, nb)
        case PredApp(sym, arg):
            new_arg = None if arg is None else subst_term(
                sigma, taboo, arg, ("arg", _path), loop_mode)
            if sym in sigma:
                _clash(sigma, sym, taboo, _path)
                return _dotted(sigma, sigma.entries[sym], new_arg, arg, _path)
            return f if new_arg is arg else PredApp(sym, new_arg)
        case Not(a):
            na = subst_formula(sigma, taboo, a, ("arg", _path), loop_mode)
            return f if na is a else Not(na)
        case And(a, b):
            na = subst_formula(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_formula(sigma, taboo, b, ("right", _path), loop_mode)
            return f if na is a and nb is b else And(na, nb)
        case Or(a, b):
            na = subst_formula(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_formula(sigma, taboo, b, ("right", _path), loop_mode)
            return f if na is a and nb is b else Or(na, nb)
        case Imply(a, b):
            na = subst_formula(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_formula(sigma, taboo, b, ("right", _path), loop_mode)
            return f if na is a and nb is b else Imply(na, nb)
        case Equiv(a, b):
            na = subst_formula(sigma, taboo, a, ("left", _path), loop_mode)
            nb = subst_formula(sigma, taboo, b, ("right", _path), loop_mode)
            return f if na is a and nb is b else Equiv(na, nb)
        case Exists(v, a):
            na = subst_formula(sigma, taboo.add(v), a, ("body", _path), loop_mode)
            return f if na is a else Exists(v, na)
        case Forall(v, a):
            na = subst_formula(sigma, taboo.add(v), a, ("body", _path), loop_mode)
            return f if na is a else Forall(v, na)
        case Diamond(g, a):
            ng, out = subst_game(sigma, taboo, g, ("game", _path), loop_mode)
            na = subst_formula(sigma, out, a, ("body", _path), loop_mode)
            return f if ng is g and na is a else Diamond(ng, na)
        case Box(g, a):
            ng, out = subst_game(sigma, taboo, g, ("game", _path), loop_mode)
            na = subst_formula(sigma, out, a, ("body", _path), loop_mode)
            return f if ng is g and na is a else Box(ng, na)
    raise TypeError(f"not a formula: {f!r}")


def subst_game(sigma: USubst, taboo: VarSet, g: Game, _path=None,
               loop_mode: str = TWO_PASS) -> tuple[Game, VarSet]:
    """Substitute into a game; returns the result and the output taboo,
    which extends the input taboo by everything the result may write."""
    COUNTERS["game"] += 1
    match g:
        case GameSym(sym):
            if sym in sigma:
                return sigma.entries[sym], taboo | sigma.bv[sym]
            return g, ALL
        case Assign(v, t):
            nt = subst_term(sigma, taboo, t, ("term", _path), loop_mode)
            return (g if nt is t else Assign(v, nt)), taboo.add(v)
        case ODE(eqs, dom):
            out = taboo
            for x, _ in eqs:
                out = out.add(x).add(x.prime)
            neqs = tuple((x, subst_term(sigma, out, rhs, ("rhs", _path), loop_mode))
                         for x, rhs in eqs)
            ndom = subst_formula(sigma, out, dom, ("domain", _path), loop_mode)
            changed = ndom is not dom or any(n is not o for (_, n), (_, o) in zip(neqs, eqs))
            return (ODE(neqs, ndom) if changed else g), out
        case Test(c):
            nc = subst_formula(sigma, taboo, c, ("cond", _path), loop_mode)
            return (g if nc is c else Test(nc)), taboo
        case Choice(a, b):
            na, outa = subst_game(sigma, taboo, a, ("left", _path), loop_mode)
            nb, outb = subst_game(sigma, taboo, b, ("right", _path), loop_mode)
            return (g if na is a and nb is b else Choice(na, nb)), outa | outb
        case Seq(a, b):
            na, outa = subst_game(sigma, taboo, a, ("left", _path), loop_mode)
            nb, outb = subst_game(sigma, outa, b, ("right", _path), loop_mode)
            return (g if na is a and nb is b else Seq(na, nb)), outb
        case Loop(a):
            if loop_mode == BV_OPT:
                probe, _ = subst_game(sigma, EMPTY, a, ("body", _path), loop_mode)
                out = taboo | bv_game(probe)
                na, _ = subst_game(sigma, out, a, ("body", _path), loop_mode)
                return (g if na is a else Loop(na)), out
            _, out = subst_game(sigma, taboo, a, ("body", _path), loop_mode)
            na, out2 = subst_game(sigma, out, a, ("body", _path), loop_mode)
            if out2 != out:
                raise FixpointViolation(
                    f"loop taboo not a fixpoint: {out} then {out2}")
            return (g if na is a else Loop(na)), out
        case Dual(a):
            na, out = subst_game(sigma, taboo, a, ("body", _path), loop_mode)
            return (g if na is a else Dual(na)), out
        case DiffGame(eqs, y, y_in, z, z_in):
            out = taboo.add(y).add(y.prime).add(z).add(z.prime)
            for x, _ in eqs:
                out = out.add(x).add(x.prime)
            neqs = tuple((x, subst_term(sigma, out, rhs, ("rhs", _path), loop_mode))
                         for x, rhs in eqs)
            ny = subst_formula(sigma, out, y_in, ("y_in", _path), loop_mode)
            nz = subst_formula(sigma, out, z_in, ("z_in", _path), loop_mode)
            changed = (ny is not y_in or nz is not z_in
                       or any(n is not o for (_, n), (_, o) in zip(neqs, eqs)))
            return (DiffGame(neqs, y, ny, z, nz) if changed else g), out
    raise TypeError(f"not a game: {g!r}")


def us(sigma: USubst, phi: Formula, loop_mode: str = TWO_PASS) -> Formula:
    """Apply a uniform substitution to a formula with no initial taboos."""
    return subst_formula(sigma, EMPTY, phi, None, loop_mode)
