"""Runtime values.

Ints and bools are Python ``int``/``bool``, sequences are tuples, elements of
declared sorts are ``Elem``.  ``Unspecified`` and ``Default`` are the two
placeholders a partial operation can return before grounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from ..core.sorts import FnSort, Sort


@dataclass(frozen=True, order=True)
class Elem:
    sort: str
    index: int

    def __str__(self) -> str:
        return f"{self.sort}!val!{self.index}"


@dataclass(frozen=True)
class TokenKey:
    """Identity of an unspecified value: symbol, grounded arguments, result sort.

    Equal keys denote the same value, which makes unspecified results
    congruent.
    """

    symbol: str
    args: tuple
    sort: Sort

    def sort_key(self):
        return (self.symbol, repr(self.args), str(self.sort))

    def __str__(self) -> str:
        args = ", ".join(map(_show, self.args))
        return f"{self.symbol}({args})"


@dataclass(frozen=True)
class Unspecified:
    key: TokenKey


@dataclass(frozen=True)
class Default:
    sort: Sort


@dataclass(frozen=True)
class FnTable:
    """A finite function given by its graph; ``fallback`` covers missing points."""

    sort: FnSort
    entries: tuple[tuple[tuple, Any], ...]
    fallback: Any = None

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.entries))

    def __call__(self, *args):
        try:
            return self._map[args]
        except KeyError:
            if self.fallback is None:
                raise KeyError(f"function table has no entry for {args}") from None
            return self.fallback


Value = Union[int, bool, Elem, tuple, FnTable, Unspecified, Default]


def _show(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return "[" + ", ".join(map(_show, v)) + "]"
    return str(v)


def show(v: Value) -> str:
    """Compact human-readable rendering (not SMT-LIB)."""
    return _show(v)
