"""Enumeration bounds and the per-sort value domains they induce."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core.sorts import BoolSort, ElemSort, FnSort, IntSort, SeqSort, Sort
from .errors import SeqkitError, UnsupportedToken


@dataclass(frozen=True)
class Bounds:
    """Finite universe: sequences up to ``max_len``, integers in the window
    ``[int_lo, int_hi]``, ``elem_card`` values per declared sort."""

    max_len: int = 3
    int_lo: int = -2
    int_hi: int = 4
    elem_card: int = 2
    delta_int: int = 0

    def __post_init__(self):
        if self.max_len < 0:
            raise SeqkitError("max_len must be >= 0")
        if not self.int_lo <= 0 <= self.int_hi:
            raise SeqkitError(f"integer window [{self.int_lo}, {self.int_hi}] must contain 0")
        if self.elem_card < 1:
            raise SeqkitError("elem_card must be >= 1")
        if not self.int_lo <= self.delta_int <= self.int_hi:
            raise SeqkitError(f"delta_int {self.delta_int} lies outside the integer window")

    @property
    def window(self) -> range:
        return range(self.int_lo, self.int_hi + 1)

    def replace(self, **kw) -> "Bounds":
        return Bounds(**{**self.__dict__, **kw})

    def domain(self, sort: Sort) -> list:
        """All values of ``sort`` in enumeration order.

        Sequences are ordered by length, then lexicographically by element
        position in the element domain; integers ascend from ``int_lo``.
        """
        if isinstance(sort, BoolSort):
            return [False, True]
        if isinstance(sort, IntSort):
            return list(self.window)
        if isinstance(sort, ElemSort):
            from .semantics.values import Elem

            return [Elem(sort.name, k) for k in range(self.elem_card)]
        if isinstance(sort, SeqSort):
            elems = self.domain(sort.elem)
            out = []
            for n in range(self.max_len + 1):
                out.extend(itertools.product(elems, repeat=n))
            return out
        if isinstance(sort, FnSort):
            return list(self.tables(sort))
        raise SeqkitError(f"sort {sort} is not enumerable")

    def count(self, sort: Sort) -> int:
        if isinstance(sort, BoolSort):
            return 2
        if isinstance(sort, IntSort):
            return len(self.window)
        if isinstance(sort, ElemSort):
            return self.elem_card
        if isinstance(sort, SeqSort):
            c = self.count(sort.elem)
            return sum(c**n for n in range(self.max_len + 1))
        if isinstance(sort, FnSort):
            points = 1
            for a in sort.args:
                points *= self.count(a)
            return self.count(sort.ret) ** points
        raise SeqkitError(f"sort {sort} is not enumerable")

    def tables(self, sort: FnSort):
        from .semantics.values import FnTable

        points = list(itertools.product(*(self.domain(a) for a in sort.args)))
        for outs in itertools.product(self.domain(sort.ret), repeat=len(points)):
            yield FnTable(sort, tuple(zip(points, outs)))

    def token_domain(self, sort: Sort) -> list:
        """Values an unspecified token may take."""
        if isinstance(sort, (SeqSort, FnSort)):
            raise UnsupportedToken(f"unspecified values of sort {sort} are not enumerated")
        return self.domain(sort)

    def delta(self, sort: Sort):
        """Designated default value of ``sort``."""
        if isinstance(sort, IntSort):
            return self.delta_int
        if isinstance(sort, BoolSort):
            return False
        if isinstance(sort, ElemSort):
            from .semantics.values import Elem

            return Elem(sort.name, 0)
        if isinstance(sort, SeqSort):
            return ()
        raise SeqkitError(f"no default value for sort {sort}")
