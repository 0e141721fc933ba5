"""Hypothesis strategies for values and well-sorted terms."""

import functools

from hypothesis import strategies as st

from seqkit.core import build as b
from seqkit.core.sorts import BOOL, INT, ElemSort, FnSort, SeqSort
from seqkit.core.terms import ElemLit, FunRef, IntLit, Var
from seqkit.semantics.values import Elem

E = ElemSort("E")
SE = SeqSort(E)
SI = SeqSort(INT)

elems = st.integers(0, 1).map(lambda k: Elem("E", k))
seqs = st.lists(elems, max_size=3).map(tuple)
small_ints = st.integers(-2, 4)

F1 = FunRef("f", FnSort((E,), E))
F2 = FunRef("g", FnSort((E, E), E))
FI = FunRef("h", FnSort((INT, E), E))
FOLD = FunRef("acc", FnSort((INT, E), INT))
FOLDI = FunRef("acci", FnSort((INT, INT, E), INT))


def _leaf(sort):
    if sort == INT:
        return st.one_of(
            st.integers(-3, 5).map(IntLit),
            st.sampled_from([Var("i", INT), Var("j", INT), Var("n", INT)]),
        )
    if sort == BOOL:
        return st.sampled_from([b.lit(True), b.lit(False), Var("p", BOOL)])
    if sort == E:
        return st.one_of(
            st.integers(0, 1).map(lambda k: ElemLit(E, k)),
            st.sampled_from([Var("v", E), Var("w", E)]),
        )
    if sort == SE:
        return st.one_of(st.sampled_from([Var("s", SE), Var("u", SE)]), st.just(b.empty(E)))
    raise AssertionError(sort)


@functools.lru_cache(maxsize=None)
def terms(sort, depth=3):
    """Random well-sorted terms over a fixed vocabulary."""
    if depth <= 0:
        return _leaf(sort)
    sub = lambda s: terms(s, depth - 1)  # noqa: E731
    options = [_leaf(sort)]
    if sort == INT:
        options += [
            sub(SE).map(b.seq_len),
            st.tuples(sub(INT), sub(INT)).map(lambda a: b.add(*a)),
            st.tuples(sub(INT), sub(INT)).map(lambda a: b.sub(*a)),
            st.tuples(sub(SE), sub(SE), sub(INT)).map(lambda a: b.mk("seq.indexof", *a)),
            st.tuples(sub(SE), sub(SE)).map(lambda a: b.mk("seq.indexof", *a)),
            st.tuples(sub(SE)).map(lambda a: b.mk("seq.fold_left", FOLD, b.lit(0), *a)),
            st.tuples(sub(SE)).map(lambda a: b.mk("seq.fold_lefti", FOLDI, b.lit(0), b.lit(0), *a)),
            st.tuples(sub(INT)).map(lambda a: b.mk("*", b.lit(2), *a)),
        ]
    elif sort == BOOL:
        options += [
            st.tuples(sub(INT), sub(INT)).map(lambda a: b.le(*a)),
            st.tuples(sub(INT), sub(INT)).map(lambda a: b.lt(*a)),
            st.tuples(sub(E), sub(E)).map(lambda a: b.eq(*a)),
            st.tuples(sub(SE), sub(SE)).map(lambda a: b.mk("seq.contains", *a)),
            st.tuples(sub(SE), sub(SE)).map(lambda a: b.mk("seq.prefixof", *a)),
            st.tuples(sub(SE), sub(SE)).map(lambda a: b.mk("seq.suffixof", *a)),
            st.tuples(sub(BOOL), sub(BOOL)).map(lambda a: b.and_(*a)),
            st.tuples(sub(BOOL), sub(BOOL)).map(lambda a: b.implies(*a)),
            sub(BOOL).map(b.not_),
        ]
    elif sort == E:
        options += [
            st.tuples(sub(SE), sub(INT)).map(lambda a: b.get(*a)),
            st.tuples(sub(SE), sub(INT), sub(E)).map(lambda a: b.mk("seq.get_default", *a)),
            st.tuples(sub(BOOL), sub(E), sub(E)).map(lambda a: b.ite(*a)),
        ]
    elif sort == SE:
        options += [
            sub(E).map(b.unit),
            st.tuples(sub(INT), sub(E)).map(lambda a: b.mk("seq.const", *a)),
            st.tuples(sub(SE), sub(INT), sub(E)).map(lambda a: b.mk("seq.set", *a)),
            st.tuples(sub(SE), sub(INT), sub(INT)).map(lambda a: b.mk("seq.slice", *a)),
            st.lists(sub(SE), min_size=1, max_size=3).map(lambda a: b.concat(*a)),
            st.tuples(sub(SE), sub(INT)).map(lambda a: b.mk("seq.at", *a)),
            st.tuples(sub(SE), sub(SE), sub(SE)).map(lambda a: b.mk("seq.replace", *a)),
            st.tuples(sub(SE), sub(SE), sub(SE)).map(lambda a: b.mk("seq.replace_all", *a)),
            sub(SE).map(lambda a: b.mk("seq.rev", a)),
            st.tuples(sub(SE), sub(INT), sub(SE)).map(lambda a: b.mk("seq.update", *a)),
            sub(SE).map(lambda a: b.mk("seq.map", F1, a)),
            st.tuples(sub(SE), sub(SE)).map(lambda a: b.mk("seq.map", F2, *a)),
            st.tuples(sub(INT), sub(SE)).map(lambda a: b.mk("seq.mapi", FI, *a)),
            st.tuples(sub(BOOL), sub(SE), sub(SE)).map(lambda a: b.ite(*a)),
            st.tuples(sub(INT), sub(SE)).map(lambda a: b.let([("x", a[0])], b.unit(b.get(a[1], Var("x", INT))))),
        ]
    return st.one_of(*options)
