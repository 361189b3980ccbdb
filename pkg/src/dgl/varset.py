"""Variables and finite-or-cofinite sets of variables.

Bound-variable sets of game symbols are "all variables", so the set algebra
has to represent complements of finite sets exactly, not approximately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, slots=True)
class Variable:
    """A base variable (order 0) or its differential symbol x' (order 1)."""

    name: str
    order: int = 0

    @property
    def prime(self) -> "Variable":
        return Variable(self.name, 1)

    @property
    def base(self) -> "Variable":
        return Variable(self.name, 0)

    def __str__(self) -> str:
        return self.name + "'" * self.order


@dataclass(frozen=True, slots=True)
class VarSet:
    """Either a finite set of variables or the complement of one.

    ``cofinite=True`` means the set contains every variable except
    ``members``; in particular ``VarSet(True, frozenset())`` is the set of
    all variables.
    """

    cofinite: bool
    members: frozenset[Variable]

    @staticmethod
    def finite(vs: Iterable[Variable] = ()) -> "VarSet":
        return VarSet(False, frozenset(vs))

    @staticmethod
    def all_but(vs: Iterable[Variable]) -> "VarSet":
        return VarSet(True, frozenset(vs))

    def __contains__(self, v: Variable) -> bool:
        return (v in self.members) != self.cofinite

    def __or__(self, other: "VarSet") -> "VarSet":
        if not self.cofinite and not other.cofinite:
            return VarSet(False, self.members | other.members)
        if self.cofinite and other.cofinite:
            return VarSet(True, self.members & other.members)
        if self.cofinite:
            return VarSet(True, self.members - other.members)
        return VarSet(True, other.members - self.members)

    def __and__(self, other: "VarSet") -> "VarSet":
        if not self.cofinite and not other.cofinite:
            return VarSet(False, self.members & other.members)
        if self.cofinite and other.cofinite:
            return VarSet(True, self.members | other.members)
        if self.cofinite:
            return VarSet(False, other.members - self.members)
        return VarSet(False, self.members - other.members)

    def __invert__(self) -> "VarSet":
        return VarSet(not self.cofinite, self.members)

    def __sub__(self, other: "VarSet") -> "VarSet":
        return self & ~other

    def add(self, v: Variable) -> "VarSet":
        if v in self:
            return self
        if self.cofinite:
            return VarSet(True, self.members - {v})
        return VarSet(False, self.members | {v})

    def disjoint(self, other: "VarSet") -> bool:
        meet = self & other
        return not meet.cofinite and not meet.members

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.members

    @property
    def is_all(self) -> bool:
        return self.cofinite and not self.members

    def iter_finite(self) -> Iterator[Variable]:
        if self.cofinite:
            raise ValueError("cannot enumerate a cofinite variable set")
        return iter(self.members)

    def __str__(self) -> str:
        body = ",".join(sorted(str(v) for v in self.members))
        if self.cofinite:
            return "all" if not self.members else "all \\ {%s}" % body
        return "{%s}" % body


EMPTY = VarSet.finite()
ALL = VarSet.all_but(())
