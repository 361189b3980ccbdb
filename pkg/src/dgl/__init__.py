"""Differential game logic: syntax, uniform substitution, and a small
axiomatic proof kernel.

The central entry points are :func:`parse_formula` and friends for concrete
syntax, :func:`us` for one-pass uniform substitution, :func:`church_formula`
for the multi-pass reference engine, and :func:`check_text` for proof
scripts.
"""

from .church import church_formula, church_game, church_term
from .kernel import AXIOMS, RULES, Report, check_script, check_text
from .parser import (
    ParseError, parse_formula, parse_game, parse_kind, parse_subst, parse_term,
)
from .printer import pretty
from .statics import bv_game, fv_formula, fv_game, fv_term, mbv_game
from .subst import (
    BV_OPT, ClashError, ClashInfo, FixpointViolation, SubstError, TWO_PASS,
    USubst, subst_formula, subst_game, subst_term, us,
)
from .varset import ALL, EMPTY, Variable, VarSet

__all__ = [
    "ALL", "AXIOMS", "BV_OPT", "ClashError", "ClashInfo", "EMPTY",
    "FixpointViolation", "ParseError", "Report", "RULES", "SubstError",
    "TWO_PASS", "USubst", "Variable", "VarSet", "bv_game", "check_script",
    "check_text", "church_formula", "church_game", "church_term",
    "fv_formula", "fv_game", "fv_term", "mbv_game", "parse_formula",
    "parse_game", "parse_kind", "parse_subst", "parse_term", "pretty",
    "subst_formula", "subst_game", "subst_term", "us",
]
