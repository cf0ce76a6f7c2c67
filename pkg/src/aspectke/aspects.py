"""Aspect syntax: cuts, advice bodies, conditions and set expressions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

from .model import Capability, In, Location, Out, Read, SourceSpan


class Suggestion(enum.Enum):
    BREAK = "break"
    PROCEED = "proceed"

    def __str__(self) -> str:
        return self.value


# -- cuts -------------------------------------------------------------------


@dataclass(frozen=True)
class CutEval:
    """``eval(Y)@l`` in a cut: ``Y`` binds the spawned process."""

    proc_var: str
    target: Location

    capability = Capability.EVAL


@dataclass(frozen=True)
class CutNewloc:
    """``newloc(_)`` or ``newloc(!u)`` in a cut."""

    binder: str | None = None

    capability = Capability.NEWLOC


CutAction = Union[Out, In, Read, CutEval, CutNewloc]


@dataclass(frozen=True)
class Cut:
    source: Location
    action: CutAction
    cont_var: str | None = None


# -- set expressions --------------------------------------------------------


@dataclass(frozen=True)
class SetLit:
    """Literal set; items are locations or capabilities."""

    items: tuple[Union[Location, Capability], ...]


@dataclass(frozen=True)
class NamedSet:
    """A set declared in an aspect file header (``set Floor = {f1, f2}``)."""

    name: str
    items: tuple[Location, ...]


@dataclass(frozen=True)
class Inter:
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Union_:
    left: "SetExpr"
    right: "SetExpr"


ANALYSES = ("Act", "FV", "LC", "Loc", "FVc", "LCc")


@dataclass(frozen=True)
class Analysis:
    """A behavior-analysis call on a process variable, e.g. ``Loc_in(Y)``.

    ``fn`` is one of :data:`ANALYSES`; ``cap`` is required for the
    capability-indexed forms ``Loc``, ``FVc`` and ``LCc``.
    """

    fn: str
    var: str
    cap: Capability | None = None

    def __post_init__(self):
        if self.fn not in ANALYSES:
            raise ValueError(f"unknown analysis {self.fn}")
        needs_cap = self.fn in ("Loc", "FVc", "LCc")
        if needs_cap != (self.cap is not None):
            raise ValueError(f"{self.fn} {'requires' if needs_cap else 'takes no'} capability")


@dataclass(frozen=True)
class LVarStar:
    pass


SetExpr = Union[SetLit, NamedSet, Inter, Union_, Analysis, LVarStar]


# -- conditions -------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: Location
    right: Location


@dataclass(frozen=True)
class And:
    left: "Condition"
    right: "Condition"


@dataclass(frozen=True)
class Or:
    left: "Condition"
    right: "Condition"


@dataclass(frozen=True)
class Not:
    cond: "Condition"


@dataclass(frozen=True)
class Test:
    fields: tuple[Location, ...]
    target: Location

    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class Exists:
    var: str
    domain: SetExpr
    body: "Condition"


@dataclass(frozen=True)
class Forall:
    var: str
    domain: SetExpr
    body: "Condition"


@dataclass(frozen=True)
class CapIn:
    cap: Capability
    set: SetExpr


@dataclass(frozen=True)
class LocIn:
    loc: Location
    set: SetExpr


@dataclass(frozen=True)
class IsEmpty:
    set: SetExpr


Condition = Union[Eq, And, Or, Not, Test, Exists, Forall, CapIn, LocIn, IsEmpty]


# -- aspects ----------------------------------------------------------------


@dataclass(frozen=True)
class Case:
    cond: Condition
    suggestion: Suggestion


@dataclass(frozen=True)
class AdviceBody:
    cases: tuple[Case, ...]
    default: Suggestion


@dataclass(frozen=True)
class Aspect:
    name: str
    cut: Cut
    body: AdviceBody
    span: SourceSpan | None = field(default=None, compare=False, repr=False)
