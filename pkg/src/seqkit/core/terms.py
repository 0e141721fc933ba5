"""Immutable term AST.

Theory symbols, boolean connectives and integer atoms are all ``App`` nodes
keyed by their SMT-LIB spelling; binders, literals and references to user
functions get their own node types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .sorts import FnSort, IntSort, ElemSort, Sort, INT


class _Node:
    __slots__ = ()

    def __hash__(self) -> int:
        return self._h


def _hashed(cls):
    """Cache the structural hash computed once at construction.

    Applied before ``@dataclass`` so the generated ``__init__`` calls the hook
    and the explicit ``__hash__`` is kept.
    """
    init = cls.__dict__.get("__post_init__")
    names = [f for f in cls.__annotations__ if f != "_h"]

    def __post_init__(self):
        if init is not None:
            init(self)
        object.__setattr__(
            self, "_h", hash((cls.__name__, *(getattr(self, n) for n in names)))
        )

    cls.__post_init__ = __post_init__
    cls.__hash__ = _Node.__hash__
    return cls


@dataclass(frozen=True, eq=True)
@_hashed
class Var(_Node):
    name: str
    sort: Sort
    _h: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, eq=True)
@_hashed
class IntLit(_Node):
    value: int
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise TypeError(f"IntLit needs an int, got {self.value!r}")


@dataclass(frozen=True, eq=True)
@_hashed
class BoolLit(_Node):
    value: bool
    _h: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, eq=True)
@_hashed
class ElemLit(_Node):
    """The ``index``-th element of an enumerated element sort."""

    sort: ElemSort
    index: int
    _h: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, eq=True)
@_hashed
class App(_Node):
    """Application of a built-in symbol.

    ``ann`` is the ``(as ...)`` qualifier, only used by nullary symbols whose
    sort cannot be inferred (``seq.empty``, ``arrc.default``).
    """

    op: str
    args: tuple["Term", ...] = ()
    ann: Sort | None = None
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, eq=True)
@_hashed
class FunRef(_Node):
    """Reference to a declared or defined function, used as a map/fold argument."""

    name: str
    sort: FnSort
    _h: int = field(init=False, repr=False, compare=False)


@dataclass(frozen=True, eq=True)
@_hashed
class Call(_Node):
    """Application of a user function (``define-fun``/``declare-fun``).

    Nullary calls stand for ``define-const`` names.
    """

    name: str
    params: tuple[Sort, ...]
    ret: Sort
    args: tuple["Term", ...] = ()
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, eq=True)
@_hashed
class Let(_Node):
    """Parallel let: every bound term is evaluated in the outer scope."""

    bindings: tuple[tuple[str, "Term"], ...]
    body: "Term"
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bindings", tuple((n, t) for n, t in self.bindings))
        if not self.bindings:
            raise ValueError("let needs at least one binding")


@dataclass(frozen=True, eq=True)
@_hashed
class Forall(_Node):
    var: str
    body: "Term"
    sort: Sort = INT
    _h: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.sort, IntSort):
            raise TypeError("quantifiers range over Int only")


Term = Union[Var, IntLit, BoolLit, ElemLit, App, FunRef, Call, Let, Forall]


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (App, Call)):
        return t.args
    if isinstance(t, Let):
        return (*(b for _, b in t.bindings), t.body)
    if isinstance(t, Forall):
        return (t.body,)
    return ()


def subterms(t: Term):
    """Pre-order traversal, binders included."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        stack.extend(reversed(children(u)))


def free_vars(t: Term) -> frozenset[tuple[str, Sort]]:
    """Free variables as (name, sort) pairs, respecting let/forall scoping."""
    if isinstance(t, Var):
        return frozenset({(t.name, t.sort)})
    if isinstance(t, (App, Call)):
        out: frozenset = frozenset()
        for a in t.args:
            out |= free_vars(a)
        return out
    if isinstance(t, Let):
        bound = {n for n, _ in t.bindings}
        out = frozenset()
        for _, b in t.bindings:
            out |= free_vars(b)
        return out | frozenset(v for v in free_vars(t.body) if v[0] not in bound)
    if isinstance(t, Forall):
        return frozenset(v for v in free_vars(t.body) if v[0] != t.var)
    return frozenset()


def free_funs(t: Term) -> frozenset[tuple[str, FnSort]]:
    """Names of user functions referenced by ``t``."""
    out = set()
    for u in subterms(t):
        if isinstance(u, FunRef):
            out.add((u.name, u.sort))
        elif isinstance(u, Call) and u.params:
            out.add((u.name, FnSort(u.params, u.ret)))
    return frozenset(out)


def fresh_name(base: str, avoid) -> str:
    avoid = set(avoid)
    if base not in avoid:
        return base
    k = 1
    while f"{base}!{k}" in avoid:
        k += 1
    return f"{base}!{k}"


def _names(t: Term) -> set[str]:
    out = set()
    for u in subterms(t):
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, Let):
            out.update(n for n, _ in u.bindings)
        elif isinstance(u, Forall):
            out.add(u.var)
    return out


def substitute(t: Term, bindings: dict[str, Term]) -> Term:
    """Capture-avoiding substitution of free variables.

    Raises SortMismatch when a replacement's sort differs from the variable's.
    """
    from .check import sort_of
    from ..errors import SortMismatch

    if not bindings:
        return t
    checked = {}
    for name, repl in bindings.items():
        checked[name] = (repl, sort_of(repl))
    return _subst(t, checked, SortMismatch)


def _subst(t, bindings, SortMismatch):
    if isinstance(t, Var):
        hit = bindings.get(t.name)
        if hit is None:
            return t
        repl, rsort = hit
        if rsort != t.sort:
            raise SortMismatch(
                f"cannot substitute {rsort} term for {t.name}: {t.sort}",
                expected=t.sort, actual=rsort,
            )
        return repl
    if isinstance(t, App):
        return App(t.op, tuple(_subst(a, bindings, SortMismatch) for a in t.args), t.ann)
    if isinstance(t, Call):
        return Call(t.name, t.params, t.ret, tuple(_subst(a, bindings, SortMismatch) for a in t.args))
    if isinstance(t, Let):
        new_bound = tuple((n, _subst(b, bindings, SortMismatch)) for n, b in t.bindings)
        inner = {k: v for k, v in bindings.items() if k not in {n for n, _ in t.bindings}}
        body = t.body
        renamed = []
        if inner:
            danger = set()
            for repl, _ in inner.values():
                danger |= {n for n, _ in free_vars(repl)}
            avoid = danger | _names(body) | set(inner)
            for n, b in new_bound:
                if n in danger:
                    m = fresh_name(n, avoid)
                    avoid.add(m)
                    body = _subst(body, {n: (Var(m, _sort(b)), _sort(b))}, SortMismatch)
                    renamed.append((m, b))
                else:
                    renamed.append((n, b))
        else:
            renamed = list(new_bound)
        return Let(tuple(renamed), _subst(body, inner, SortMismatch) if inner else body)
    if isinstance(t, Forall):
        inner = {k: v for k, v in bindings.items() if k != t.var}
        if not inner:
            return t
        danger = set()
        for repl, _ in inner.values():
            danger |= {n for n, _ in free_vars(repl)}
        var, body = t.var, t.body
        if var in danger:
            new = fresh_name(var, danger | _names(body) | set(inner))
            body = _subst(body, {var: (Var(new, t.sort), t.sort)}, SortMismatch)
            var = new
        return Forall(var, _subst(body, inner, SortMismatch), t.sort)
    return t


def _sort(t):
    from .check import sort_of

    return sort_of(t)
