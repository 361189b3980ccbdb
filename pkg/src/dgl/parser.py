"""Recursive-descent parser for terms, formulas, games and substitutions.

Whitespace-insensitive.  ``x'`` lexes as a single differential-variable
token, while ``(x)'`` is the differential of the term ``x``.  Binary minus
parses to ``Plus(a, Neg(b))``.  Replacement tables use the syntax

    f(.) ~> term ; p(.) ~> formula ; a ~> {game}

where a replacement that parses as a bare application binds a function
symbol, not a predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .syntax import (
    And, Assign, Box, Choice, Cmp, CMP_OPS, Diamond, DiffGame, Differential,
    DOT, Dual, Equiv, Exists, FALSE, FalseF, Forall, Formula, FUNC, FuncApp,
    Game, GAME, GameSym, Imply, Loop, Neg, Not, Number, ODE, Or, Plus, Power,
    PRED, PredApp, Seq, Symbol, Term, Test, Times, TRUE, Var,
)
from .varset import Variable


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        super().__init__(f"{msg} at offset {pos}" + (f": ...{text[pos:pos+20]!r}" if text else ""))


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # num, ident, op, kw, end
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)"
    r"|(?P<kw>\\exists\b|\\forall\b)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*'?)"
    r"|(?P<op><->|->|\+\+|>=|<=|!=|:=|~>|[(){}\[\]<>=+\-*^;,&|!?.']))"
)


def _lex(text: str) -> list[_Tok]:
    toks, i = [], 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m or m.end() == i:
            if text[i:].strip() == "":
                break
            raise ParseError("unrecognized character", i, text)
        i = m.end()
        for kind in ("num", "kw", "ident", "op"):
            if m.group(kind) is not None:
                toks.append(_Tok(kind, m.group(kind), m.start(kind)))
                break
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0
        # inside `<game>` a bare `>` closes the modality, so it cannot start
        # a comparison there (parenthesize or brace the test formula)
        self.gt_depth = 0

    # -- token plumbing ----------------------------------------------------
    def peek(self, ahead: int = 0) -> _Tok:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def at(self, text: str, ahead: int = 0) -> bool:
        return self.peek(ahead).text == text and self.peek(ahead).kind != "num"

    def eat(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self.peek().text!r}",
                             self.peek().pos, self.text)
        return self.eat()

    def done(self) -> bool:
        return self.peek().kind == "end"

    def fail(self, msg: str):
        raise ParseError(msg, self.peek().pos, self.text)

    # -- terms -------------------------------------------------------------
    def term(self) -> Term:
        t = self.product()
        while self.at("+") or self.at("-"):
            op = self.eat().text
            rhs = self.product()
            t = Plus(t, rhs if op == "+" else Neg(rhs))
        return t

    def product(self) -> Term:
        t = self.unary()
        while self.at("*"):
            self.eat()
            t = Times(t, self.unary())
        return t

    def unary(self) -> Term:
        if self.at("-"):
            self.eat()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Term:
        t = self.primary()
        while True:
            if self.at("'"):
                self.eat()
                t = Differential(t)
            elif self.at("^") and self.peek(1).kind == "num":
                self.eat()
                k = self.eat().text
                if "/" in k:
                    self.fail("fractional exponent")
                t = Power(t, int(k))
            else:
                return t

    def primary(self) -> Term:
        tok = self.peek()
        if tok.kind == "num":
            self.eat()
            return Number(Fraction(tok.text))
        if tok.text == ".":
            self.eat()
            return FuncApp(DOT)
        if tok.kind == "ident":
            if tok.text in ("true", "false", "in"):
                self.fail(f"reserved word {tok.text!r} in term position")
            self.eat()
            if self.at("(") and not tok.text.endswith("'"):
                self.eat()
                if self.at(")"):
                    self.eat()
                    return FuncApp(Symbol(FUNC, tok.text, 0))
                arg = self.term()
                self.expect(")")
                return FuncApp(Symbol(FUNC, tok.text, 1), arg)
            return Var(_mk_var(tok.text))
        if tok.text == "(":
            self.eat()
            t = self.term()
            self.expect(")")
            return t
        self.fail("expected a term")

    # -- formulas ----------------------------------------------------------
    def formula(self) -> Formula:
        f = self.imply()
        if self.at("<->"):
            self.eat()
            return Equiv(f, self.formula())
        return f

    def imply(self) -> Formula:
        f = self.disj()
        if self.at("->"):
            self.eat()
            return Imply(f, self.imply())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.eat()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.funary()
        while self.at("&"):
            self.eat()
            f = And(f, self.funary())
        return f

    def funary(self) -> Formula:
        tok = self.peek()
        if tok.text == "!":
            self.eat()
            return Not(self.funary())
        if tok.kind == "kw":
            self.eat()
            v = self.var_token()
            body = self.funary()
            return Exists(v, body) if tok.text == "\\exists" else Forall(v, body)
        if tok.text == "<":
            self.eat()
            self.gt_depth += 1
            g = self.game()
            self.expect(">")
            self.gt_depth -= 1
            return Diamond(g, self.funary())
        if tok.text == "[":
            self.eat()
            g = self.game()
            self.expect("]")
            return Box(g, self.funary())
        if tok.text == "true":
            self.eat()
            return TRUE
        if tok.text == "false":
            self.eat()
            return FALSE
        # comparison / predicate application / parenthesized formula
        save = self.i
        try:
            t = self.term()
            for op in CMP_OPS:
                if op == ">" and self.gt_depth:
                    continue
                if self.at(op):
                    self.eat()
                    return Cmp(op, t, self.term())
            if isinstance(t, FuncApp) and t.sym is not DOT:
                return PredApp(Symbol(PRED, t.sym.name, t.sym.arity), t.arg)
            raise ParseError("expected a comparison", self.peek().pos, self.text)
        except ParseError:
            self.i = save
        if tok.text == "(":
            self.eat()
            save, self.gt_depth = self.gt_depth, 0
            f = self.formula()
            self.expect(")")
            self.gt_depth = save
            return f
        self.fail("expected a formula")

    def var_token(self) -> Variable:
        tok = self.peek()
        if tok.kind != "ident" or tok.text in ("true", "false", "in"):
            self.fail("expected a variable")
        self.eat()
        return _mk_var(tok.text)

    # -- games -------------------------------------------------------------
    def game(self) -> Game:
        g = self.gseq()
        if self.at("++"):
            self.eat()
            return Choice(g, self.game())
        return g

    def gseq(self) -> Game:
        g = self.gpostfix()
        if self.at(";"):
            self.eat()
            return Seq(g, self.gseq())
        return g

    def gpostfix(self) -> Game:
        g = self.gprimary()
        while True:
            if self.at("*"):
                self.eat()
                g = Loop(g)
            elif self.at("^") and self.at("d", 1):
                self.eat()
                self.eat()
                g = Dual(g)
            else:
                return g

    def gprimary(self) -> Game:
        tok = self.peek()
        if tok.text == "?":
            self.eat()
            return Test(self.formula())
        if tok.text == "{":
            self.eat()
            save, self.gt_depth = self.gt_depth, 0
            g = self.game()
            if self.at("&") and isinstance(g, ODE) and g.domain == TRUE:
                self.eat()
                g = self.ode_tail(g.eqs)
            self.expect("}")
            self.gt_depth = save
            return g
        if tok.kind == "ident":
            if tok.text.endswith("'") and self.at("=", 1):
                eqs = [self.ode_eq()]
                while (self.at(",") and self.peek(1).kind == "ident"
                       and self.peek(1).text.endswith("'") and self.at("=", 2)):
                    self.eat()
                    eqs.append(self.ode_eq())
                return ODE(tuple(eqs), TRUE)
            if self.at(":=", 1):
                self.eat()
                self.eat()
                return Assign(_mk_var(tok.text), self.term())
            if tok.text in ("true", "false", "in"):
                self.fail(f"reserved word {tok.text!r} in game position")
            self.eat()
            return GameSym(Symbol(GAME, tok.text, 0))
        self.fail("expected a game")

    def ode_tail(self, eqs) -> Game:
        """The part after `&` in a braced ODE: a domain constraint, or the
        `d y in (Y) & z in (Z)` controls of a differential game."""
        if (self.at("d") and self.peek(1).kind == "ident"
                and self.at("in", 2)):
            self.eat()  # d
            y = self.var_token()
            self.expect("in")
            self.expect("(")
            y_in = self.formula()
            self.expect(")")
            self.expect("&")
            z = self.var_token()
            self.expect("in")
            self.expect("(")
            z_in = self.formula()
            self.expect(")")
            return DiffGame(eqs, y, y_in, z, z_in)
        return ODE(eqs, self.formula())

    def ode_eq(self) -> tuple[Variable, Term]:
        tok = self.peek()
        if tok.kind != "ident" or not tok.text.endswith("'"):
            self.fail("expected a differential equation x'=e")
        self.eat()
        self.expect("=")
        return Variable(tok.text[:-1], 0), self.term()


def _mk_var(text: str) -> Variable:
    if text.endswith("'"):
        return Variable(text[:-1], 1)
    return Variable(text, 0)


def _finish(p: _Parser, node):
    if not p.done():
        p.fail("trailing input")
    return node


def parse_term(text: str) -> Term:
    return _finish(p := _Parser(text), p.term())


def parse_formula(text: str) -> Formula:
    return _finish(p := _Parser(text), p.formula())


def parse_game(text: str) -> Game:
    return _finish(p := _Parser(text), p.game())


def parse_kind(text: str, kind: str):
    return {"term": parse_term, "formula": parse_formula, "game": parse_game}[kind](text)


def parse_subst(text: str):
    """Parse a replacement table into a substitution.

    Returns a :class:`dgl.subst.USubst`.  Keys are ``f()``, ``f(.)``,
    ``p()``, ``p(.)`` or a bare game symbol name; game replacements must be
    braced.
    """
    from .subst import SubstError, USubst

    p = _Parser(text)
    entries: dict[Symbol, object] = {}
    names: set[str] = set()
    while not p.done():
        key_tok = p.peek()
        if key_tok.kind != "ident" or key_tok.text.endswith("'"):
            p.fail("expected a symbol name")
        name = p.eat().text
        if p.at("("):
            p.eat()
            if p.at(")"):
                p.eat()
                arity = 0
            else:
                p.expect(".")
                p.expect(")")
                arity = 1
            p.expect("~>")
            save = p.i
            repl = None
            try:
                t = p.term()
                if p.done() or p.at(";"):
                    repl = t
                    sym = Symbol(FUNC, name, arity)
            except ParseError:
                pass
            if repl is None:
                p.i = save
                repl = p.formula()
                if not (p.done() or p.at(";")):
                    p.fail("expected ';' after replacement")
                sym = Symbol(PRED, name, arity)
        else:
            p.expect("~>")
            p.expect("{")
            repl = p.game()
            p.expect("}")
            sym = Symbol(GAME, name, 0)
        if name in names:
            raise SubstError(f"duplicate replacement for symbol {name}")
        names.add(name)
        entries[sym] = repl
        if p.at(";"):
            p.eat()
    return USubst(entries)
