"""Canonical S-expression printing of sorts, terms, values, models and scripts."""

from __future__ import annotations

import re

from ..bounds import Bounds
from ..core.sorts import BoolSort, ElemSort, FnSort, IntSort, SeqSort, Sort
from ..core.terms import App, BoolLit, Call, ElemLit, Forall, FunRef, IntLit, Let, Term, Var, subterms
from ..errors import SeqkitError
from ..semantics.values import Elem, FnTable
from .script import (
    Assert,
    CheckSatBounded,
    DeclareConst,
    DeclareFun,
    DeclareSort,
    DefineFun,
    Eval,
    SetOption,
)

_SIMPLE = re.compile(r"^[A-Za-z~!@$%^&*_\-+=<>.?/][A-Za-z0-9~!@$%^&*_\-+=<>.?/]*$")

STRICT_ARITY_NOTE = (
    "; note: {op} is printed in its 3-argument form; "
    "the strict signature table lists only two arguments"
)


def symbol(name: str) -> str:
    return name if _SIMPLE.match(name) else f"|{name}|"


def print_sort(s: Sort) -> str:
    if isinstance(s, SeqSort):
        return f"(Seq {print_sort(s.elem)})"
    if isinstance(s, ElemSort):
        return symbol(s.name)
    if isinstance(s, (IntSort, BoolSort)):
        return str(s)
    raise SeqkitError(f"sort {s} has no SMT-LIB spelling")


def print_term(t: Term, strict: bool = False) -> str:
    """Canonical spelling; ``parse_term(print_term(t))`` rebuilds ``t``.

    With ``strict`` a comment line is prepended for every ternary
    ``seq.replace`` / ``seq.indexof`` occurrence.
    """
    body = _term(t)
    if not strict:
        return body
    notes = []
    for u in subterms(t):
        if isinstance(u, App) and u.op in ("seq.replace", "seq.indexof") and len(u.args) == 3:
            note = STRICT_ARITY_NOTE.format(op=u.op)
            if note not in notes:
                notes.append(note)
    return "\n".join(notes + [body])


def _int(n: int) -> str:
    return str(n) if n >= 0 else f"(- {-n})"


def _term(t: Term) -> str:
    if isinstance(t, Var):
        return symbol(t.name)
    if isinstance(t, IntLit):
        return _int(t.value)
    if isinstance(t, BoolLit):
        return "true" if t.value else "false"
    if isinstance(t, ElemLit):
        return f"{t.sort.name}!val!{t.index}"
    if isinstance(t, App):
        if t.ann is not None:
            return f"(as {t.op} {print_sort(t.ann)})"
        if not t.args:
            return t.op
        return "(" + " ".join([t.op, *map(_term, t.args)]) + ")"
    if isinstance(t, FunRef):
        return symbol(t.name)
    if isinstance(t, Call):
        if not t.args:
            return symbol(t.name)
        return "(" + " ".join([symbol(t.name), *map(_term, t.args)]) + ")"
    if isinstance(t, Let):
        binds = " ".join(f"({symbol(n)} {_term(b)})" for n, b in t.bindings)
        return f"(let ({binds}) {_term(t.body)})"
    if isinstance(t, Forall):
        return f"(forall (({symbol(t.var)} Int)) {_term(t.body)})"
    raise TypeError(f"not a term: {t!r}")


# values


def value_term(v, sort: Sort) -> Term:
    """Literal term denoting a grounded value of ``sort``."""
    if isinstance(sort, SeqSort):
        if not isinstance(v, tuple):
            raise SeqkitError(f"value {v!r} is not a sequence")
        if not v:
            return App("seq.empty", (), sort)
        units = [App("seq.unit", (value_term(x, sort.elem),)) for x in v]
        return units[0] if len(units) == 1 else App("seq.concat", tuple(units))
    if isinstance(sort, BoolSort):
        return BoolLit(bool(v))
    if isinstance(sort, IntSort):
        return IntLit(int(v))
    if isinstance(sort, ElemSort):
        if not isinstance(v, Elem):
            raise SeqkitError(f"value {v!r} is not an element of {sort}")
        return ElemLit(sort, v.index)
    raise SeqkitError(f"no literal syntax for values of sort {sort}")


def print_value(v, sort: Sort) -> str:
    return _term(value_term(v, sort))


def _table(name: str, table: FnTable) -> str:
    sort = table.sort
    params = [f"x!{k}" for k in range(len(sort.args))]
    plist = " ".join(f"({p} {print_sort(s)})" for p, s in zip(params, sort.args))
    body = print_value(table.fallback if table.fallback is not None else table.entries[-1][1], sort.ret)
    for args, out in reversed(table.entries):
        conds = [f"(= {p} {print_value(a, s)})" for p, a, s in zip(params, args, sort.args)]
        cond = conds[0] if len(conds) == 1 else "(and " + " ".join(conds) + ")"
        body = f"(ite {cond} {print_value(out, sort.ret)} {body})"
    return f"(define-fun {symbol(name)} ({plist}) {print_sort(sort.ret)} {body})"


def print_token_key(key) -> str:
    """The read that produced an unspecified value, with grounded arguments."""
    if key.symbol == "seq.get":
        s, i = key.args
        return f"(seq.get {print_value(s, SeqSort(key.sort))} {_int(i)})"
    raise SeqkitError(f"no spelling for token {key}")


def print_model(model, bounds: Bounds | None = None) -> str:
    """One line per symbol (sorted by name), then one ``undef`` line per
    unspecified value (sorted by token key)."""
    bounds = bounds or Bounds()
    lines = []
    tables = model.function_tables(bounds)
    for name in sorted(model.sorts):
        sort = model.sorts[name]
        if isinstance(sort, FnSort):
            lines.append(_table(name, tables[name]))
        else:
            lines.append(f"(define-const {symbol(name)} {print_sort(sort)} {print_value(model.base[name], sort)})")
    undef = model.undef()
    for key in sorted(undef, key=lambda k: k.sort_key()):
        lines.append(f"(undef {print_token_key(key)} {print_value(undef[key], key.sort)})")
    return "\n".join(lines)


# scripts


def print_command(c) -> str:
    if isinstance(c, DeclareSort):
        return f"(declare-sort {symbol(c.name)} 0)"
    if isinstance(c, DeclareConst):
        return f"(declare-const {symbol(c.name)} {print_sort(c.sort)})"
    if isinstance(c, DeclareFun):
        params = " ".join(map(print_sort, c.params))
        return f"(declare-fun {symbol(c.name)} ({params}) {print_sort(c.ret)})"
    if isinstance(c, DefineFun):
        if not c.params:
            return f"(define-const {symbol(c.name)} {print_sort(c.ret)} {_term(c.body)})"
        params = " ".join(f"({symbol(n)} {print_sort(s)})" for n, s in c.params)
        return f"(define-fun {symbol(c.name)} ({params}) {print_sort(c.ret)} {_term(c.body)})"
    if isinstance(c, Assert):
        return f"(assert {_term(c.term)})"
    if isinstance(c, CheckSatBounded):
        return "(check-sat-bounded)"
    if isinstance(c, Eval):
        return f"(eval {_term(c.term)})"
    if isinstance(c, SetOption):
        return f"(set-option :{c.key} {c.value})"
    raise TypeError(f"not a command: {c!r}")


def print_script(commands) -> str:
    return "\n".join(print_command(c) for c in commands)
