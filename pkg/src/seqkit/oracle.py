"""Exhaustive bounded model finding.

Free value symbols are enumerated eagerly over the bounded universe.
Unspecified values and entries of uninterpreted functions are enumerated
lazily: evaluation runs until it needs an unassigned one, then branches over
that token's domain.  Only tokens reachable under the current branch are
ever assigned, which is equivalent to enumerating every total assignment.
"""

from __future__ import annotations

import itertools
import math
import os
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .bounds import Bounds
from .core.check import sort_of
from .core.signature import Profile
from .core.sorts import BOOL, FnSort, Sort
from .core.terms import Call, FunRef, IntLit, Term, free_vars, subterms
from .errors import MissingToken, SeqkitError, SortMismatch, UniverseTooLarge, WindowTooSmall
from .semantics.evaluator import Evaluator, FunDef
from .semantics.values import FnTable, TokenKey

DEFAULT_CEILING = 10**7


def default_ceiling() -> int:
    env = os.environ.get("SEQKIT_CEILING")
    return int(env) if env else DEFAULT_CEILING


@dataclass(frozen=True)
class Model:
    """A point of the bounded universe plus the tokens it needed."""

    base: Mapping[str, object] = field(default_factory=dict)
    sorts: Mapping[str, Sort] = field(default_factory=dict)
    tokens: Mapping[TokenKey, object] = field(default_factory=dict)

    def undef(self) -> dict[TokenKey, object]:
        """Unspecified-value tokens (function entries excluded)."""
        return {k: v for k, v in self.tokens.items() if k.symbol not in self.sorts}

    def function_tables(self, bounds: Bounds) -> dict[str, FnTable]:
        """Tables for free function symbols, completed with a fallback value."""
        out = {}
        for name, sort in self.sorts.items():
            if not isinstance(sort, FnSort):
                continue
            if isinstance(self.base.get(name), FnTable):
                out[name] = self.base[name]
                continue
            entries = tuple(
                (k.args, v) for k, v in sorted(self.tokens.items(), key=lambda kv: kv[0].sort_key())
                if k.symbol == name
            )
            out[name] = FnTable(sort, entries, bounds.domain(sort.ret)[0])
        return out


@dataclass(frozen=True)
class Sat:
    model: Model
    status: str = "sat"
    stats: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class UnsatWithinBounds:
    status: str = "unsat-within-bounds"
    stats: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Unknown:
    reason: str
    status: str = "unknown"
    stats: dict = field(default_factory=dict, compare=False)


Verdict = Sat | UnsatWithinBounds | Unknown


@dataclass(frozen=True)
class Validity:
    status: str  # "valid-within-bounds" | "invalid" | "unknown"
    counterexample: Model | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def valid(self) -> bool:
        return self.status == "valid-within-bounds"


@dataclass(frozen=True)
class Divergence:
    model: Model
    left: object
    right: object


@dataclass(frozen=True)
class Equivalence:
    status: str  # "equivalent-within-bounds" | "different" | "unknown"
    witness: Divergence | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent-within-bounds"


class ModelStream:
    """Restartable, deterministic stream of base assignments."""

    def __init__(self, free: Iterable[tuple[str, Sort]], bounds: Bounds, ceiling: int | None = None):
        self.free = sorted(set(free), key=lambda v: (v[0], str(v[1])))
        self.bounds = bounds
        self.count = math.prod(bounds.count(s) for _, s in self.free)
        ceiling = default_ceiling() if ceiling is None else ceiling
        if self.count > ceiling:
            raise UniverseTooLarge(self.count, ceiling)

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[dict]:
        names = [n for n, _ in self.free]
        domains = [self.bounds.domain(s) for _, s in self.free]
        for combo in itertools.product(*domains):
            yield dict(zip(names, combo))


def enumerate_models(free, bounds: Bounds, ceiling: int | None = None) -> ModelStream:
    """All assignments of ``free`` within ``bounds``, lexicographic by name.

    Function-sorted symbols enumerate every total table.
    """
    return ModelStream(free, bounds, ceiling)


class _Budget:
    def __init__(self, ceiling):
        self.left = ceiling

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


class Search:
    """Shared machinery for the bounded checks."""

    def __init__(
        self,
        bounds: Bounds | None = None,
        profile: Profile = Profile.PROPOSAL,
        defs: Mapping[str, FunDef] | None = None,
        arrc_slice: str = "inclusive",
        ceiling: int | None = None,
    ):
        self.bounds = bounds or Bounds()
        self.profile = profile
        self.defs = dict(defs or {})
        self.arrc_slice = arrc_slice
        self.ceiling = default_ceiling() if ceiling is None else ceiling
        self._evaluators: dict[Profile, Evaluator] = {}
        self.evaluations = 0
        self.universe = 0

    def stats(self, stream=None) -> dict:
        universe = len(stream) if stream is not None else self.universe
        return {"universe": universe, "evaluations": self.evaluations}

    def evaluator(self, profile: Profile | None = None) -> Evaluator:
        profile = profile or self.profile
        ev = self._evaluators.get(profile)
        if ev is None:
            ev = self._evaluators[profile] = Evaluator(profile, self.bounds, self.defs, self.arrc_slice)
        return ev

    # vocabulary

    def symbols(self, terms: Iterable[Term]) -> tuple[set, set]:
        """Free value symbols and free (uninterpreted) function symbols,
        following definitions transitively."""
        values, funs = set(), set()
        seen_defs = set()
        todo = list(terms)
        while todo:
            t = todo.pop()
            values |= free_vars(t)
            for u in subterms(t):
                name = None
                if isinstance(u, FunRef):
                    name, sort = u.name, u.sort
                elif isinstance(u, Call):
                    name = u.name
                    sort = FnSort(u.params, u.ret) if u.params else u.ret
                if name is None:
                    continue
                fd = self.defs.get(name)
                if fd is not None and fd.body is not None:
                    if name not in seen_defs:
                        seen_defs.add(name)
                        params = {p for p, _ in fd.params}
                        values |= {v for v in free_vars(fd.body) if v[0] not in params}
                        todo.append(_strip_params(fd))
                elif isinstance(sort, FnSort):
                    funs.add((name, sort))
                else:
                    values.add((name, sort))
        return values, funs

    def check_literals(self, terms: Iterable[Term]):
        lo, hi = self.bounds.int_lo, self.bounds.int_hi
        for t in terms:
            for u in subterms(t):
                if isinstance(u, IntLit) and not lo <= u.value <= hi:
                    raise WindowTooSmall(
                        f"literal {u.value} lies outside the integer window [{lo}, {hi}]"
                    )

    # core enumeration

    def branches(self, pairs, base, budget: _Budget, start: Mapping | None = None):
        """Yield (tokens, values) for every completion of ``start`` to a
        token assignment covering every read the evaluation makes."""
        stack: list[dict] = [dict(start or {})]
        while stack:
            u = stack.pop()
            budget.tick()
            self.evaluations += 1
            try:
                vals = tuple(ev.eval(t, base, u) for ev, t in pairs)
            except MissingToken as exc:
                key = exc.key
                for d in reversed(self.token_domain(key)):
                    nu = dict(u)
                    nu[key] = d
                    stack.append(nu)
                continue
            yield u, vals

    def token_domain(self, key: TokenKey) -> list:
        if key.symbol.startswith("seq."):
            return self.bounds.token_domain(key.sort)
        return self.bounds.domain(key.sort)

    def models(self, terms: Iterable[Term], extra_free=()):
        terms = list(terms)
        values, funs = self.symbols(terms)
        values |= set(extra_free)
        stream = ModelStream(values, self.bounds, self.ceiling)
        self.universe = len(stream)
        sorts = {n: s for n, s in values} | {n: s for n, s in funs}
        return stream, sorts

    def divergences(self, left: tuple, right: tuple, guard: Term | None = None, first_only=False):
        """Models where the two (profile, term) sides disagree.

        ``guard``, when given, restricts the search to models where it
        evaluates true under the left profile.
        """
        terms = [left[1], right[1]] + ([guard] if guard is not None else [])
        stream, sorts = self.models(terms)
        pairs = [(self.evaluator(left[0]), left[1]), (self.evaluator(right[0]), right[1])]
        if guard is not None:
            pairs.append((self.evaluator(left[0]), guard))
        budget = _Budget(self.ceiling)
        for base in stream:
            for u, vals in self.branches(pairs, base, budget):
                if guard is not None and not vals[2]:
                    continue
                if vals[0] != vals[1]:
                    yield Divergence(Model(base, sorts, u), vals[0], vals[1])
                    if first_only:
                        return


def _strip_params(fd: FunDef) -> Term:
    return fd.body


def _expect_bool(phi: Term):
    s = sort_of(phi)
    if s != BOOL:
        raise SortMismatch(f"expected a Bool formula, got {s}", expected=BOOL, actual=s)


def _search(bounds, profile, defs, arrc_slice, ceiling) -> Search:
    return Search(bounds, profile, defs, arrc_slice, ceiling)


def check_sat_bounded(
    phi: Term,
    bounds: Bounds | None = None,
    profile: Profile = Profile.PROPOSAL,
    *,
    defs=None,
    arrc_slice: str = "inclusive",
    ceiling: int | None = None,
) -> Verdict:
    """First model (with tokens chosen existentially) making ``phi`` true."""
    _expect_bool(phi)
    s = _search(bounds, profile, defs, arrc_slice, ceiling)
    s.check_literals([phi])
    stream, sorts = s.models([phi])
    ev = s.evaluator()
    budget = _Budget(s.ceiling)
    try:
        for base in stream:
            for u, (val,) in s.branches([(ev, phi)], base, budget):
                if val:
                    model = Model(base, sorts, u)
                    if ev.eval(phi, model.base, model.tokens) is not True:
                        raise SeqkitError("internal: Sat model does not re-evaluate to true")
                    return Sat(model, stats=s.stats(stream))
    except _OutOfBudget:
        return Unknown(f"evaluation budget of {s.ceiling} exhausted", stats=s.stats(stream))
    return UnsatWithinBounds(stats=s.stats(stream))


def check_valid_bounded(
    phi: Term,
    bounds: Bounds | None = None,
    profile: Profile = Profile.PROPOSAL,
    *,
    defs=None,
    arrc_slice: str = "inclusive",
    ceiling: int | None = None,
) -> Validity:
    """``phi`` holds in every bounded model under every token assignment."""
    _expect_bool(phi)
    s = _search(bounds, profile, defs, arrc_slice, ceiling)
    s.check_literals([phi])
    stream, sorts = s.models([phi])
    ev = s.evaluator()
    budget = _Budget(s.ceiling)
    try:
        for base in stream:
            for u, (val,) in s.branches([(ev, phi)], base, budget):
                if not val:
                    return Validity("invalid", Model(base, sorts, u), stats=s.stats(stream))
    except _OutOfBudget:
        return Validity("unknown", reason=f"evaluation budget of {s.ceiling} exhausted",
                        stats=s.stats(stream))
    return Validity("valid-within-bounds", stats=s.stats(stream))


def check_equiv_bounded(
    t1: Term,
    t2: Term,
    bounds: Bounds | None = None,
    profile: Profile = Profile.PROPOSAL,
    profile2: Profile | None = None,
    *,
    guard: Term | None = None,
    defs=None,
    arrc_slice: str = "inclusive",
    ceiling: int | None = None,
) -> Equivalence:
    """Compare ``t1`` (under ``profile``) with ``t2`` (under ``profile2``,
    default the same) on every bounded model, optionally only where
    ``guard`` holds.  Tokens are shared between both sides."""
    s1, s2 = sort_of(t1), sort_of(t2)
    if s1 != s2:
        raise SortMismatch(f"cannot compare terms of sorts {s1} and {s2}", expected=s1, actual=s2)
    s = _search(bounds, profile, defs, arrc_slice, ceiling)
    s.check_literals([t1, t2] + ([guard] if guard is not None else []))
    try:
        for d in s.divergences((profile, t1), (profile2 or profile, t2), guard, first_only=True):
            return Equivalence("different", d, stats=s.stats())
    except _OutOfBudget:
        return Equivalence("unknown", reason=f"evaluation budget of {s.ceiling} exhausted",
                           stats=s.stats())
    return Equivalence("equivalent-within-bounds", stats=s.stats())


def diff_profiles(
    t: Term,
    bounds: Bounds | None = None,
    profile_a: Profile = Profile.PROPOSAL,
    profile_b: Profile = Profile.CVC5,
    *,
    defs=None,
    arrc_slice: str = "inclusive",
    ceiling: int | None = None,
) -> list[Divergence]:
    """Every bounded model (and token assignment) where the profiles disagree."""
    s = _search(bounds, profile_a, defs, arrc_slice, ceiling)
    s.check_literals([t])
    try:
        return list(s.divergences((profile_a, t), (profile_b, t)))
    except _OutOfBudget:
        raise SeqkitError(f"evaluation budget of {s.ceiling} exhausted") from None


def diff_terms(
    t1: Term,
    t2: Term,
    bounds: Bounds | None = None,
    profile: Profile = Profile.PROPOSAL,
    profile2: Profile | None = None,
    *,
    guard: Term | None = None,
    defs=None,
    arrc_slice: str = "inclusive",
    ceiling: int | None = None,
) -> list[Divergence]:
    """All divergences between two terms (the exhaustive form of check_equiv_bounded)."""
    s = _search(bounds, profile, defs, arrc_slice, ceiling)
    s.check_literals([t1, t2] + ([guard] if guard is not None else []))
    try:
        return list(s.divergences((profile, t1), (profile2 or profile, t2), guard))
    except _OutOfBudget:
        raise SeqkitError(f"evaluation budget of {s.ceiling} exhausted") from None
