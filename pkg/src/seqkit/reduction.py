"""Fragment membership, rewriting into the Array_c vocabulary, and the
index-shifting detector."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .core import build as b
from .core.check import sort_of
from .core.signature import ARRAYC_SYMBOLS, FRAGMENT_SYMBOLS, is_sequence_symbol
from .core.terms import App, Call, Forall, IntLit, Let, Term, Var, subterms
from .errors import NotInFragment


@dataclass(frozen=True)
class ReductionRule:
    source: str
    target: str
    soundness: str = "exact"  # or "caveat: ..."


RULES: dict[str, ReductionRule] = {
    r.source: r
    for r in [
        ReductionRule("seq.empty", "repeat(δ, 0)"),
        ReductionRule("seq.const", "repeat(v, l)"),
        ReductionRule("seq.unit", "repeat(v, 1)"),
        ReductionRule("seq.len", "length(s)"),
        ReductionRule("seq.get", "nth(s, i)"),
        ReductionRule("seq.set", "update(i, s, v)"),
        ReductionRule("seq.slice", "slice(s, i, j)"),
        ReductionRule("seq.concat", "app(s1, app(s2, ...))"),
        ReductionRule(
            "seq.update",
            "app(slice(s1, 0, i-1), app(s2, slice(s1, i+len(s2), len(s1)-1)))",
            "caveat: agrees only when 0 <= i and i+len(s2) <= len(s1)",
        ),
        ReductionRule(
            "seq.at",
            "ite(nth(s, i) = δ, repeat(δ, 0), repeat(nth(s, i), 1))",
            "caveat: an in-bounds element equal to δ yields the empty sequence",
        ),
        ReductionRule("seq.map", "map(f, s1, ..., sn)"),
    ]
}

HINTS = {"seq.mapi": "reducible to map"}

# already-reduced vocabulary is accepted as is
_TARGET = frozenset(ARRAYC_SYMBOLS) | {"arrc.default"}


@dataclass(frozen=True)
class Offender:
    symbol: str
    hint: str = ""

    def __str__(self) -> str:
        return f"{self.symbol} ({self.hint})" if self.hint else self.symbol


def in_fragment(t: Term) -> list[Offender]:
    """Sequence symbols of ``t`` outside the reducible fragment; empty means inside."""
    seen = []
    for u in subterms(t):
        if isinstance(u, App) and is_sequence_symbol(u.op):
            if u.op not in FRAGMENT_SYMBOLS and u.op not in _TARGET and u.op not in seen:
                seen.append(u.op)
    return [Offender(op, HINTS.get(op, "")) for op in sorted(seen)]


def _delta(seq_term: Term) -> Term:
    return b.default(sort_of(seq_term).elem)


def reduce_to_arrayc(t: Term) -> Term:
    offenders = in_fragment(t)
    if offenders:
        raise NotInFragment([str(o) for o in offenders])
    return _reduce(t)


def _reduce(t: Term) -> Term:
    if isinstance(t, App):
        args = tuple(_reduce(a) for a in t.args)
        return _rewrite(t, args)
    if isinstance(t, Let):
        return Let(tuple((n, _reduce(v)) for n, v in t.bindings), _reduce(t.body))
    if isinstance(t, Forall):
        return Forall(t.var, _reduce(t.body), t.sort)
    if isinstance(t, Call):
        return Call(t.name, t.params, t.ret, tuple(_reduce(a) for a in t.args))
    return t


def _rewrite(t: App, a: tuple[Term, ...]) -> Term:
    op = t.op
    if op == "seq.empty":
        return b.mk("arrc.repeat", b.default(t.ann.elem), 0)
    if op == "seq.const":
        return b.mk("arrc.repeat", a[1], a[0])
    if op == "seq.unit":
        return b.mk("arrc.repeat", a[0], 1)
    if op == "seq.len":
        return b.mk("arrc.length", a[0])
    if op == "seq.get":
        return b.mk("arrc.nth", a[0], a[1])
    if op == "seq.set":
        return b.mk("arrc.update", a[1], a[0], a[2])
    if op == "seq.slice":
        return b.mk("arrc.slice", *a)
    if op == "seq.concat":
        out = a[-1]
        for s in reversed(a[:-1]):
            out = b.mk("arrc.app", s, out)
        return out
    if op == "seq.update":
        s1, i, s2 = a
        head = b.mk("arrc.slice", s1, 0, b.sub(i, 1))
        tail = b.mk(
            "arrc.slice", s1,
            b.add(i, b.mk("arrc.length", s2)),
            b.sub(b.mk("arrc.length", s1), 1),
        )
        return b.mk("arrc.app", head, b.mk("arrc.app", s2, tail))
    if op == "seq.at":
        s, i = a
        nth = b.mk("arrc.nth", s, i)
        delta = _delta(s)
        return b.ite(b.eq(nth, delta), b.mk("arrc.repeat", delta, 0), b.mk("arrc.repeat", nth, 1))
    if op == "seq.map":
        return b.mk("arrc.map", *a)
    return App(op, a, t.ann)


# index shifting

INDEX_SYMBOLS = {"seq.get": 1, "arrc.nth": 1, "seq.at": 1, "seq.get_default": 1}


@dataclass(frozen=True)
class ShiftWitness:
    sequence: Term
    var: str
    offsets: tuple[int, int]


def _linear(t: Term, env) -> tuple[str, int] | None:
    """``j + c`` for a quantified ``j`` in scope, as (j, c)."""
    if isinstance(t, Var):
        return env.get(t.name)
    if isinstance(t, App) and t.op in ("+", "-") and len(t.args) == 2:
        x, y = t.args
        if t.op == "+" and isinstance(x, IntLit):
            x, y = y, x
        if not isinstance(y, IntLit):
            return None
        base = _linear(x, env)
        if base is None:
            return None
        c = y.value if t.op == "+" else -y.value
        return base[0], base[1] + c
    return None


def detect_index_shifting(t: Term) -> list[ShiftWitness]:
    """Universally bound integers read at two different literal offsets
    of the same sequence term."""
    uses: dict[tuple[Term, str], set[int]] = defaultdict(set)
    order: list[tuple[Term, str]] = []

    def walk(u: Term, env):
        if isinstance(u, Forall):
            inner = dict(env)
            inner[u.var] = (u.var, 0)
            walk(u.body, inner)
            return
        if isinstance(u, Let):
            inner = dict(env)
            for name, bound in u.bindings:
                walk(bound, env)
                lin = _linear(bound, env)
                if lin is None:
                    inner.pop(name, None)
                else:
                    inner[name] = lin
            walk(u.body, inner)
            return
        if isinstance(u, App):
            pos = INDEX_SYMBOLS.get(u.op)
            if pos is not None:
                lin = _linear(u.args[pos], env)
                if lin is not None:
                    key = (u.args[0], lin[0])
                    if key not in uses:
                        order.append(key)
                    uses[key].add(lin[1])
            for a in u.args:
                walk(a, env)
            return
        if isinstance(u, Call):
            for a in u.args:
                walk(a, env)

    walk(t, {})
    out = []
    for key in order:
        offs = sorted(uses[key])
        for o in offs[1:]:
            out.append(ShiftWitness(key[0], key[1], (offs[0], o)))
    return out

