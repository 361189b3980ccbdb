"""Syntactic well-definedness checks for differential games.

Control constraints must be quantifier-free first-order conditions on the
control variable alone.  That the constraint set is compact is a semantic
obligation no syntactic check can discharge; it is reported as assumed
rather than silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .statics import fv_formula
from .subst import USubst, subst_game
from .syntax import Box, Diamond, DiffGame, Exists, Forall, Game, iter_nodes
from .varset import VarSet


@dataclass(frozen=True)
class Obligation:
    """A condition assumed, not checked."""

    text: str


def diffgame_checks(g: DiffGame) -> tuple[list[str], list[Obligation]]:
    """Violations of the decidable side conditions, plus the assumed
    obligations (compactness of the control constraint sets)."""
    violations: list[str] = []
    obligations = [
        Obligation(f"constraint on {g.y} denotes a compact set"),
        Obligation(f"constraint on {g.z} denotes a compact set"),
    ]
    for label, var, constraint in (("Demon", g.y, g.y_in), ("Angel", g.z, g.z_in)):
        extra = fv_formula(constraint) - VarSet.finite([var])
        if not extra.is_empty:
            violations.append(
                f"{label} constraint mentions {extra}, not just {var}")
        for n in iter_nodes(constraint):
            if isinstance(n, (Exists, Forall, Diamond, Box)):
                violations.append(
                    f"{label} constraint is not quantifier- and modality-free")
                break
    return violations, obligations


def subst_diffgame(sigma: USubst, taboo: VarSet, g: DiffGame) -> tuple[Game, VarSet]:
    """One-pass substitution into a differential game; all equation and
    control variables (with their primes) are taboo throughout."""
    return subst_game(sigma, taboo, g)
