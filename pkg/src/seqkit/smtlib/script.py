"""Script commands and the declaration context they build."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.sorts import ElemSort, Sort
from ..core.terms import Term
from ..semantics.evaluator import FunDef


@dataclass(frozen=True)
class DeclareSort:
    name: str
    arity: int = 0
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class DeclareConst:
    name: str
    sort: Sort
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class DeclareFun:
    """Uninterpreted function with at least one parameter."""

    name: str
    params: tuple[Sort, ...]
    ret: Sort
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class DefineFun:
    name: str
    params: tuple[tuple[str, Sort], ...]
    ret: Sort
    body: Term
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Assert:
    term: Term
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class CheckSatBounded:
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Eval:
    term: Term
    pos: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SetOption:
    key: str
    value: str
    pos: tuple | None = field(default=None, compare=False)


Command = DeclareSort | DeclareConst | DeclareFun | DefineFun | Assert | CheckSatBounded | Eval | SetOption


@dataclass
class Context:
    """Symbols in scope while parsing (and later evaluating) a script."""

    sorts: dict[str, ElemSort] = field(default_factory=dict)
    consts: dict[str, Sort] = field(default_factory=dict)
    funs: dict[str, FunDef] = field(default_factory=dict)

    def names(self) -> set[str]:
        return set(self.sorts) | set(self.consts) | set(self.funs)

    def defs(self) -> dict[str, FunDef]:
        return dict(self.funs)

    def copy(self) -> "Context":
        return Context(dict(self.sorts), dict(self.consts), dict(self.funs))


@dataclass
class Script:
    commands: list
    context: Context

    def options(self) -> dict[str, str]:
        return {c.key: c.value for c in self.commands if isinstance(c, SetOption)}

    def __len__(self):
        return len(self.commands)
