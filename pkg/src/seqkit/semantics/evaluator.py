"""Profile-parameterized evaluator for closed terms."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from ..bounds import Bounds
from ..core.check import sort_of
from ..core.signature import SIGNATURE, Profile
from ..core.sorts import Sort
from ..core.terms import App, BoolLit, Call, ElemLit, Forall, FunRef, IntLit, Let, Term, Var
from ..errors import MissingToken, ProfileViolation, SeqkitError, UnsortedVariable
from . import ops
from .values import Default, Elem, FnTable, TokenKey, Unspecified

SLICE_CONVENTIONS = ("inclusive", "exclusive")


@dataclass(frozen=True)
class FunDef:
    """A user function; ``body`` is None for declared (uninterpreted) ones."""

    name: str
    params: tuple[tuple[str, Sort], ...]
    ret: Sort
    body: Term | None = None


class Evaluator:
    """Grounds closed terms under one semantics profile.

    ``base`` maps free symbols to values; ``tokens`` assigns unspecified
    values (keyed by ``TokenKey``) and entries of uninterpreted functions.
    A read that needs a missing assignment raises ``MissingToken``.
    """

    def __init__(
        self,
        profile: Profile = Profile.PROPOSAL,
        bounds: Bounds | None = None,
        defs: Mapping[str, FunDef] | None = None,
        arrc_slice: str = "inclusive",
    ):
        if arrc_slice not in SLICE_CONVENTIONS:
            raise SeqkitError(f"unknown arrc.slice convention {arrc_slice!r}")
        self.profile = profile
        self.bounds = bounds or Bounds()
        self.defs = dict(defs or {})
        self.arrc_slice = arrc_slice
        self._sorts: dict[Term, Sort] = {}

    def sort(self, t: Term) -> Sort:
        s = self._sorts.get(t)
        if s is None:
            s = self._sorts[t] = sort_of(t)
        return s

    def eval(self, t: Term, base: Mapping | None = None, tokens: Mapping | None = None):
        return _Run(self, {} if base is None else base, {} if tokens is None else tokens).ev(t, {})


def evaluate(t: Term, base=None, tokens=None, profile: Profile = Profile.PROPOSAL, **kw):
    return Evaluator(profile, **kw).eval(t, base, tokens)


class _Run:
    __slots__ = ("e", "base", "tokens", "profile", "bounds")

    def __init__(self, e: Evaluator, base, tokens):
        self.e = e
        self.base = base
        self.tokens = tokens
        self.profile = e.profile
        self.bounds = e.bounds

    def resolve(self, v):
        if isinstance(v, Unspecified):
            try:
                return self.tokens[v.key]
            except KeyError:
                raise MissingToken(v.key) from None
        if isinstance(v, Default):
            return self.bounds.delta(v.sort)
        return v

    def ev(self, t, env):
        tt = type(t)
        if tt is App:
            return self.app(t, env)
        if tt is Var:
            if t.name in env:
                return env[t.name]
            try:
                return self.base[t.name]
            except KeyError:
                raise UnsortedVariable(f"no value for free variable {t.name}") from None
        if tt is IntLit or tt is BoolLit:
            return t.value
        if tt is ElemLit:
            return Elem(t.sort.name, t.index)
        if tt is Let:
            inner = dict(env)
            for name, bound in t.bindings:
                inner[name] = self.ev(bound, env)
            return self.ev(t.body, inner)
        if tt is Forall:
            inner = dict(env)
            for j in self.bounds.window:
                inner[t.var] = j
                if not self.ev(t.body, inner):
                    return False
            return True
        if tt is Call:
            return self.call(t.name, t.ret, tuple(self.ev(a, env) for a in t.args))
        if tt is FunRef:
            return self.function(t)
        raise TypeError(f"cannot evaluate {t!r}")

    # user functions

    def call(self, name, ret, args):
        fd = self.e.defs.get(name)
        if fd is not None and fd.body is not None:
            env = {p: v for (p, _), v in zip(fd.params, args)}
            return self.ev(fd.body, env)
        table = self.base.get(name)
        if isinstance(table, FnTable):
            return table(*args)
        if table is not None and not args:
            return table
        return self.resolve(Unspecified(TokenKey(name, args, ret)))

    def function(self, ref: FunRef):
        name, ret = ref.name, ref.sort.ret
        return lambda *args: self.call(name, ret, args)

    # built-ins and theory symbols

    def app(self, t: App, env):
        op = t.op
        args = t.args
        ev = self.ev
        # short-circuiting connectives first
        if op == "and":
            for a in args:
                if not ev(a, env):
                    return False
            return True
        if op == "or":
            for a in args:
                if ev(a, env):
                    return True
            return False
        if op == "=>":
            return (not ev(args[0], env)) or bool(ev(args[1], env))
        if op == "ite":
            return ev(args[1], env) if ev(args[0], env) else ev(args[2], env)
        if op == "not":
            return not ev(args[0], env)
        if op == "=":
            return ev(args[0], env) == ev(args[1], env)
        if op == "distinct":
            return ev(args[0], env) != ev(args[1], env)
        if op == "+":
            return sum(ev(a, env) for a in args)
        if op == "-":
            vals = [ev(a, env) for a in args]
            if len(vals) == 1:
                return -vals[0]
            out = vals[0]
            for v in vals[1:]:
                out -= v
            return out
        if op == "*":
            out = 1
            for a in args:
                out *= ev(a, env)
            return out
        if op == "<=":
            return ev(args[0], env) <= ev(args[1], env)
        if op == "<":
            return ev(args[0], env) < ev(args[1], env)
        if op == ">=":
            return ev(args[0], env) >= ev(args[1], env)
        if op == ">":
            return ev(args[0], env) > ev(args[1], env)
        decl = SIGNATURE.get(op)
        if decl is None:
            raise SeqkitError(f"unknown symbol {op}")
        if not decl.available(self.profile):
            raise ProfileViolation(f"{op} is not available under profile {self.profile}")
        return self.theory(t, [ev(a, env) for a in args])

    def theory(self, t: App, v: list):
        op = t.op
        p = self.profile
        if op in ("seq.len", "arrc.length"):
            return len(v[0])
        if op in ("seq.get", "arrc.nth"):
            elem = self.e.sort(t)
            return self.resolve(ops.eval_get(v[0], v[1], p, elem, "seq.get"))
        if op == "seq.get_default":
            return ops.eval_nth_prime(*v)
        if op == "seq.at":
            return ops.eval_at(*v)
        if op == "seq.empty":
            return ()
        if op == "arrc.default":
            return self.bounds.delta(t.ann)
        if op == "seq.unit":
            return (v[0],)
        if op == "seq.const":
            return ops.eval_const(v[0], v[1])
        if op == "arrc.repeat":
            return ops.eval_const(v[1], v[0])
        if op == "seq.set":
            return ops.eval_set(*v)
        if op == "arrc.update":
            return ops.eval_set(v[1], v[0], v[2])
        if op == "seq.slice":
            return ops.eval_slice(v[0], v[1], v[2], p)
        if op == "arrc.slice":
            if self.e.arrc_slice == "exclusive":
                return ops.slice_exclusive(*v)
            return ops.slice_inclusive(*v)
        if op in ("seq.concat", "arrc.app"):
            return ops.eval_concat(v)
        if op == "seq.update":
            return ops.eval_update(v[0], v[1], v[2], p)
        if op in ("seq.map", "arrc.map"):
            return ops.eval_map(v[0], v[1:], p)
        if op == "seq.mapi":
            sorts = [self.e.sort(a).elem for a in t.args[2:]]
            return ops.eval_mapi(v[0], v[1], v[2:], p, sorts, self.resolve)
        if op == "seq.fold_left":
            return ops.eval_fold("fold_left", v[0], None, v[1], v[2], p)
        if op == "seq.fold_lefti":
            return ops.eval_fold("fold_lefti", v[0], v[1], v[2], v[3], p)
        if op.startswith("seq."):
            return ops.eval_stringlike(op[4:], v, p)
        raise SeqkitError(f"no semantics for {op}")  # pragma: no cover



def require_profile(terms, profile: Profile, defs: Mapping[str, FunDef] | None = None, pos=None):
    """Raise ProfileViolation if any theory symbol reachable from ``terms``
    (through definitions too) is unavailable under ``profile``."""
    from ..core.terms import subterms

    defs = defs or {}
    todo, seen = list(terms), set()
    while todo:
        for u in subterms(todo.pop()):
            if isinstance(u, App):
                decl = SIGNATURE.get(u.op)
                if decl is not None and not decl.available(profile):
                    raise ProfileViolation(f"{u.op} is not available under profile {profile}", pos)
            elif isinstance(u, (Call, FunRef)) and u.name not in seen:
                seen.add(u.name)
                fd = defs.get(u.name)
                if fd is not None and fd.body is not None:
                    todo.append(fd.body)
