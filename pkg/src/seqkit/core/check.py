"""Well-sortedness checking."""

from __future__ import annotations

from collections.abc import Mapping

from ..errors import ArityMismatch, SortError, SortMismatch, UnknownSymbol, UnsortedVariable
from .signature import BOOL_OPS, CMP_OPS, INT_OPS, SIGNATURE
from .sorts import BOOL, INT, FnSort, SeqSort, Sort, SortVar, contains_sortvar
from .terms import App, BoolLit, Call, ElemLit, Forall, FunRef, IntLit, Let, Term, Var


def sort_of(t: Term, env: Mapping[str, Sort] | None = None) -> Sort:
    """Return the sort of ``t``.

    With ``env`` given, every free variable must be declared there with the
    same sort; without it the sort carried by each ``Var`` is trusted.
    Schematic symbols are instantiated from their argument sorts.
    """
    return _Checker(env).sort(t, {})


class _Checker:
    def __init__(self, env):
        self.env = env

    def sort(self, t, scope):
        if isinstance(t, Var):
            expected = scope.get(t.name)
            if expected is None and self.env is not None:
                if t.name not in self.env:
                    raise UnsortedVariable(f"unbound variable {t.name}")
                expected = self.env[t.name]
            if expected is not None and expected != t.sort:
                raise SortMismatch(
                    f"variable {t.name} used at {t.sort}, bound at {expected}",
                    expected=expected, actual=t.sort,
                )
            if t.sort is None:
                raise UnsortedVariable(f"variable {t.name} has no sort")
            return t.sort
        if isinstance(t, IntLit):
            return INT
        if isinstance(t, BoolLit):
            return BOOL
        if isinstance(t, ElemLit):
            return t.sort
        if isinstance(t, FunRef):
            return t.sort
        if isinstance(t, Call):
            got = [self.sort(a, scope) for a in t.args]
            if len(got) != len(t.params):
                raise ArityMismatch(f"{t.name} expects {_args(len(t.params))}, got {len(got)}")
            for k, (want, have) in enumerate(zip(t.params, got)):
                if want != have:
                    raise SortMismatch(
                        f"argument {k + 1} of {t.name}: expected {want}, got {have}",
                        expected=want, actual=have,
                    )
            return t.ret
        if isinstance(t, Let):
            inner = dict(scope)
            for name, bound in t.bindings:
                inner[name] = self.sort(bound, scope)
            return self.sort(t.body, inner)
        if isinstance(t, Forall):
            body = self.sort(t.body, {**scope, t.var: t.sort})
            _expect(BOOL, body, "forall body")
            return BOOL
        if isinstance(t, App):
            return self.app(t, scope)
        raise TypeError(f"not a term: {t!r}")

    def app(self, t: App, scope) -> Sort:
        op = t.op
        if op in SIGNATURE:
            got = [self.sort(a, scope) for a in t.args]
            return _theory(t, got)
        got = [self.sort(a, scope) for a in t.args]
        if op in ("=", "distinct"):
            _arity(op, got, 2)
            if isinstance(got[0], FnSort):
                raise SortError(f"{op} on function sorts")
            _expect(got[0], got[1], f"second argument of {op}")
            return BOOL
        if op == "ite":
            _arity(op, got, 3)
            _expect(BOOL, got[0], "ite condition")
            _expect(got[1], got[2], "ite else-branch")
            return got[1]
        if op in BOOL_OPS:
            if op == "not":
                _arity(op, got, 1)
            elif op == "=>":
                _arity(op, got, 2)
            elif not got:
                raise ArityMismatch(f"{op} needs at least one argument")
            for k, s in enumerate(got):
                _expect(BOOL, s, f"argument {k + 1} of {op}")
            return BOOL
        if op in INT_OPS:
            if not got or (op != "-" and len(got) < 2):
                raise ArityMismatch(f"{op} needs {'one' if op == '-' else 'two'} or more arguments")
            for k, s in enumerate(got):
                _expect(INT, s, f"argument {k + 1} of {op}")
            if op == "*" and sum(not _is_literal(a) for a in t.args) > 1:
                raise SortError("multiplication needs literal coefficients (linear terms only)")
            return INT
        if op in CMP_OPS:
            _arity(op, got, 2)
            for k, s in enumerate(got):
                _expect(INT, s, f"argument {k + 1} of {op}")
            return BOOL
        raise UnknownSymbol(f"unknown symbol {op}")


def _is_literal(t) -> bool:
    if isinstance(t, IntLit):
        return True
    return isinstance(t, App) and t.op == "-" and len(t.args) == 1 and _is_literal(t.args[0])


def _args(n: int) -> str:
    return f"{n} argument" if n == 1 else f"{n} arguments"


def _arity(op, got, n):
    if len(got) != n:
        raise ArityMismatch(f"{op} expects {_args(n)}, got {len(got)}")


def _expect(want: Sort, have: Sort, what: str):
    if want != have:
        raise SortMismatch(f"{what}: expected {want}, got {have}", expected=want, actual=have)


def _unify(pattern: Sort, actual: Sort, subst: dict, what: str):
    if isinstance(pattern, SortVar):
        bound = subst.get(pattern.name)
        if bound is None:
            if isinstance(actual, FnSort):
                raise SortMismatch(f"{what}: function where a value was expected", actual=actual)
            subst[pattern.name] = actual
        elif bound != actual:
            raise SortMismatch(f"{what}: expected {bound}, got {actual}", expected=bound, actual=actual)
        return
    if isinstance(pattern, SeqSort):
        if not isinstance(actual, SeqSort):
            raise SortMismatch(f"{what}: expected a sequence, got {actual}", expected=pattern, actual=actual)
        _unify(pattern.elem, actual.elem, subst, what)
        return
    if pattern != actual:
        raise SortMismatch(f"{what}: expected {pattern}, got {actual}", expected=pattern, actual=actual)


def _resolve(s: Sort, subst: dict) -> Sort:
    if isinstance(s, SortVar):
        if s.name not in subst:
            raise SortError(f"cannot infer sort variable {s}")
        return subst[s.name]
    if isinstance(s, SeqSort):
        return SeqSort(_resolve(s.elem, subst))
    return s


def _theory(t: App, got: list[Sort]) -> Sort:
    decl = SIGNATURE[t.op]
    name = t.op
    if decl.needs_annotation:
        if got:
            raise ArityMismatch(f"{name} takes no arguments")
        if t.ann is None:
            raise SortError(f"{name} needs a sort annotation (as {name} <sort>)")
        if name == "seq.empty" and not isinstance(t.ann, SeqSort):
            raise SortMismatch(f"{name} annotated with non-sequence sort {t.ann}", actual=t.ann)
        if contains_sortvar(t.ann) or isinstance(t.ann, FnSort):
            raise SortError(f"bad annotation {t.ann}")
        return t.ann
    if t.ann is not None:
        raise SortError(f"{name} does not take a sort annotation")
    if decl.special:
        return _special(name, t.args, got)
    if decl.variadic:
        if not got:
            raise ArityMismatch(f"{name} needs at least one argument")
        patterns = [decl.arg_sorts[0]] * len(got)
    else:
        if len(got) != len(decl.arg_sorts):
            raise ArityMismatch(f"{name} expects {_args(len(decl.arg_sorts))}, got {len(got)}")
        patterns = decl.arg_sorts
    subst: dict = {}
    for k, (pat, have) in enumerate(zip(patterns, got)):
        _unify(pat, have, subst, f"argument {k + 1} of {name}")
    return _resolve(decl.ret_sort, subst)


def _elem_of(s: Sort, what: str) -> Sort:
    if not isinstance(s, SeqSort):
        raise SortMismatch(f"{what}: expected a sequence, got {s}", actual=s)
    return s.elem


def _fn(arg: Term, s: Sort, name: str) -> FnSort:
    if not isinstance(arg, FunRef) or not isinstance(s, FnSort):
        raise SortMismatch(f"first argument of {name} must name a function, got {s}", actual=s)
    return s


def _special(name: str, args, got: list[Sort]) -> Sort:
    if name == "seq.indexof":
        if len(got) not in (2, 3):
            raise ArityMismatch(f"{name} expects 2 or 3 arguments, got {len(got)}")
        subst: dict = {}
        pats = [SeqSort(SortVar("A")), SeqSort(SortVar("A")), INT]
        for k, (pat, have) in enumerate(zip(pats, got)):
            _unify(pat, have, subst, f"argument {k + 1} of {name}")
        return INT
    if not got:
        raise ArityMismatch(f"{name} needs a function argument")
    fn = _fn(args[0], got[0], name)
    if name in ("seq.map", "arrc.map"):
        seqs = got[1:]
        lead = ()
    elif name == "seq.mapi":
        if len(got) < 2:
            raise ArityMismatch(f"{name} needs an offset and at least one sequence")
        _expect(INT, got[1], f"offset of {name}")
        seqs = got[2:]
        lead = (INT,)
    elif name in ("seq.fold_left", "seq.fold_lefti"):
        indexed = name == "seq.fold_lefti"
        want = 4 if indexed else 3
        if len(got) != want:
            raise ArityMismatch(f"{name} expects {_args(want)}, got {len(got)}")
        if indexed:
            _expect(INT, got[1], f"offset of {name}")
        acc, s = got[-2], got[-1]
        elem = _elem_of(s, f"last argument of {name}")
        expected = FnSort(((INT,) if indexed else ()) + (acc, elem), acc)
        _expect(expected, fn, f"function argument of {name}")
        return acc
    else:  # pragma: no cover
        raise UnknownSymbol(name)
    if not seqs:
        raise ArityMismatch(f"{name} needs at least one sequence")
    elems = tuple(_elem_of(s, f"sequence argument of {name}") for s in seqs)
    if fn.args != lead + elems:
        expected = FnSort(lead + elems, fn.ret)
        raise SortMismatch(
            f"function argument of {name}: expected {expected}, got {fn}", expected=expected, actual=fn
        )
    return SeqSort(fn.ret)
