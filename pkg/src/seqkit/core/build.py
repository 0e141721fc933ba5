"""Sort-checked term constructors.

The raw node classes accept anything; these helpers run ``sort_of`` on the
result so terms built through them are well-sorted by construction.
"""

from __future__ import annotations

from .check import sort_of
from .sorts import SeqSort, Sort
from .terms import App, BoolLit, Call, Forall, FunRef, IntLit, Let, Term, Var


def mk(op: str, *args: Term, ann: Sort | None = None) -> App:
    t = App(op, tuple(_lift(a) for a in args), ann)
    sort_of(t)
    return t


def _lift(x) -> Term:
    if isinstance(x, bool):
        return BoolLit(x)
    if isinstance(x, int):
        return IntLit(x)
    return x


def lit(x: int | bool) -> Term:
    return _lift(x)


def var(name: str, sort: Sort) -> Var:
    return Var(name, sort)


def empty(elem: Sort) -> App:
    return mk("seq.empty", ann=SeqSort(elem))


def default(sort: Sort) -> App:
    return mk("arrc.default", ann=sort)


def eq(a, b) -> App:
    return mk("=", a, b)


def ne(a, b) -> App:
    return mk("not", eq(a, b))


def and_(*args) -> Term:
    args = tuple(_lift(a) for a in args)
    if not args:
        return BoolLit(True)
    if len(args) == 1:
        return args[0]
    return mk("and", *args)


def or_(*args) -> Term:
    args = tuple(_lift(a) for a in args)
    if not args:
        return BoolLit(False)
    if len(args) == 1:
        return args[0]
    return mk("or", *args)


def not_(a) -> App:
    return mk("not", a)


def implies(a, b) -> App:
    return mk("=>", a, b)


def ite(c, a, b) -> App:
    return mk("ite", c, a, b)


def le(a, b) -> App:
    return mk("<=", a, b)


def lt(a, b) -> App:
    return mk("<", a, b)


def ge(a, b) -> App:
    return mk(">=", a, b)


def add(*args) -> App:
    return mk("+", *args)


def sub(*args) -> App:
    return mk("-", *args)


def neg(a) -> Term:
    if isinstance(a, int) and not isinstance(a, bool):
        return IntLit(-a)
    return mk("-", a)


def maximum(a, b) -> App:
    """max as an ite (the term language has no primitive max)."""
    a, b = _lift(a), _lift(b)
    return ite(ge(a, b), a, b)


def minimum(a, b) -> App:
    a, b = _lift(a), _lift(b)
    return ite(le(a, b), a, b)


def between(lo, x, hi) -> App:
    """lo <= x < hi"""
    return and_(le(lo, x), lt(x, hi))


def let(bindings, body) -> Let:
    t = Let(tuple(bindings), body)
    sort_of(t)
    return t


def forall(name: str, body: Term) -> Forall:
    t = Forall(name, body)
    sort_of(t)
    return t


def call(fn: FunRef, *args) -> Call:
    t = Call(fn.name, fn.sort.args, fn.sort.ret, tuple(_lift(a) for a in args))
    sort_of(t)
    return t


# sequence vocabulary

def seq_len(s) -> App:
    return mk("seq.len", s)


def get(s, i) -> App:
    return mk("seq.get", s, i)


def unit(v) -> App:
    return mk("seq.unit", v)


def concat(*ss) -> App:
    return mk("seq.concat", *ss)
