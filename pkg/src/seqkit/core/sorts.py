"""Sorts of the term language."""

from __future__ import annotations

from dataclasses import dataclass


class Sort:
    __slots__ = ()

    @property
    def is_seq(self) -> bool:
        return isinstance(self, SeqSort)


@dataclass(frozen=True)
class BoolSort(Sort):
    def __str__(self) -> str:
        return "Bool"


@dataclass(frozen=True)
class IntSort(Sort):
    def __str__(self) -> str:
        return "Int"


@dataclass(frozen=True)
class ElemSort(Sort):
    """An uninterpreted sort introduced by ``declare-sort``."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SeqSort(Sort):
    elem: Sort

    def __post_init__(self):
        if isinstance(self.elem, FnSort):
            raise TypeError("sequences of functions are not allowed")

    def __str__(self) -> str:
        return f"(Seq {self.elem})"


@dataclass(frozen=True)
class FnSort(Sort):
    """First-order function sort ``args -> ret``."""

    args: tuple[Sort, ...]
    ret: Sort

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        for s in (*self.args, self.ret):
            if isinstance(s, FnSort):
                raise TypeError("function sorts cannot take or return functions")
        if not self.args:
            raise TypeError("function sorts need at least one argument")

    def __str__(self) -> str:
        args = " ".join(map(str, self.args))
        return f"({args} -> {self.ret})"


@dataclass(frozen=True)
class SortVar(Sort):
    """Schematic sort variable used in the signature table only."""

    name: str

    def __str__(self) -> str:
        return f"'{self.name}"


BOOL = BoolSort()
INT = IntSort()


def seq(elem: Sort) -> SeqSort:
    return SeqSort(elem)


def contains_sortvar(s: Sort) -> bool:
    if isinstance(s, SortVar):
        return True
    if isinstance(s, SeqSort):
        return contains_sortvar(s.elem)
    if isinstance(s, FnSort):
        return any(contains_sortvar(a) for a in (*s.args, s.ret))
    return False
