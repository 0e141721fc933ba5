import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from seqkit.bounds import Bounds
from seqkit.core import build as b
from seqkit.core.signature import SIGNATURE, Profile
from seqkit.core.sorts import INT, FnSort, SeqSort
from seqkit.core.terms import FunRef, Var
from seqkit.errors import ArityMismatch, MissingToken, ProfileViolation
from seqkit.semantics import ops
from seqkit.semantics.evaluator import Evaluator, FunDef, evaluate
from seqkit.semantics.values import Default, Elem, TokenKey, Unspecified

from strategies import E, SE, elems, seqs, small_ints

P, C, Z, R = Profile.PROPOSAL, Profile.CVC5, Profile.Z3, Profile.ARRAYC
a, bb, c, d, x, y = (Elem("E", k) for k in range(6))


# evaluator basics


def test_eval_examples():
    assert evaluate(b.seq_len(b.empty(INT))) == 0
    assert evaluate(b.unit(5)) == (5,)
    s = Var("s", SeqSort(INT))
    assert evaluate(b.get(s, 1), {"s": (7, 9)}) == 9


def test_missing_token():
    s = Var("s", SeqSort(INT))
    with pytest.raises(MissingToken) as exc:
        evaluate(b.get(s, 5), {"s": (7, 9)})
    assert exc.value.key == TokenKey("seq.get", ((7, 9), 5), INT)
    assert evaluate(b.get(s, 5), {"s": (7, 9)}, {exc.value.key: 3}) == 3


def test_profile_violation():
    s = Var("s", SeqSort(INT))
    with pytest.raises(ProfileViolation):
        evaluate(b.mk("seq.set", s, 0, 1), {"s": (1,)}, profile=Z)
    with pytest.raises(ProfileViolation):
        evaluate(b.mk("seq.update", s, 0, s), {"s": (1,)}, profile=R)


# access


def test_access():
    k = TokenKey("seq.get", ((7, 9), 5), INT)
    assert ops.eval_get((7, 9), 5, P, INT) == Unspecified(k)
    assert ops.eval_get((7, 9), 5, R, INT) == Default(INT)
    assert Evaluator(R, Bounds(delta_int=0)).eval(b.get(b.concat(b.unit(7), b.unit(9)), 5)) == 0
    assert ops.eval_at((7, 9), 5) == ()
    assert ops.eval_at((7, 9), 0) == (7,)
    assert ops.eval_access("len", [(7, 9)]) == 2


def test_nth_prime():
    assert ops.eval_nth_prime((7,), 0, 99) == 7
    assert ops.eval_nth_prime((7,), 3, 99) == 99


@given(small_ints, small_ints)
def test_nth_prime_empty(i, dflt):
    assert ops.eval_nth_prime((), i, dflt) == dflt


# set / const


def test_set():
    assert ops.eval_set((7, 9), 0, 5) == (5, 9)
    assert ops.eval_set((7, 9), -1, 5) == tuple(ref.set_([7, 9], -1, 5)) == (7, 9)
    assert ops.eval_set((), 0, 5) == ()


def test_const():
    assert ops.eval_const(3, 5) == (5, 5, 5)
    assert ops.eval_const(-2, 5) == ()


@given(elems)
def test_const_one_is_unit(v):
    assert ops.eval_const(1, v) == (v,)


# slice


def test_slice_examples():
    s = (7, 9, 4)
    assert ops.eval_slice(s, -1, 1, P) == tuple(ref.slice_proposal(list(s), -1, 1)) == (7, 9)
    assert ops.eval_slice(s, 2, 1, P) == ()
    assert ops.eval_slice(s, 1, 5, C) == (9, 4)
    assert ops.eval_slice(s, 1, 5, Z) == (9, 4)
    assert ops.eval_slice(s, -5, 10, P) == s


@given(seqs, small_ints, small_ints)
def test_slice_matches_reference(s, i, j):
    assert ops.eval_slice(s, i, j, P) == tuple(ref.slice_proposal(s, i, j))
    assert ops.eval_slice(s, i, j, C) == tuple(ref.extract(s, i, j))
    # ArrayC's seq.slice shares the inclusive convention
    assert ops.eval_slice(s, i, j, R) == tuple(ref.slice_proposal(s, i, j))


def test_slice_conventions():
    s = (7, 9, 4)
    assert ops.slice_inclusive(s, 0, 1) == (7, 9)
    assert ops.slice_exclusive(s, 0, 1) == (7,)
    assert ops.slice_exclusive(s, -3, 10) == s


# update


def test_update_examples():
    s1, s2 = (a, bb, c, d), (x, y)
    assert ops.eval_update(s1, -1, s2, P) == tuple(ref.update_proposal(s1, -1, s2)) == (y, bb, c, d)
    assert ops.eval_update(s1, -1, s2, C) == s1
    assert ops.eval_update(s1, 3, s2, P) == ops.eval_update(s1, 3, s2, C) == (a, bb, c, x)
    with pytest.raises(ProfileViolation):
        ops.eval_update(s1, 0, s2, Z)


@given(seqs, small_ints, seqs)
def test_update_matches_reference(s1, i, s2):
    assert ops.eval_update(s1, i, s2, P) == tuple(ref.update_proposal(s1, i, s2))
    assert ops.eval_update(s1, i, s2, C) == tuple(ref.update_cvc5(s1, i, s2))


@given(seqs, small_ints)
def test_update_empty_window(s, i):
    assert ops.eval_update(s, i, (), P) == s


# concat


def test_concat():
    assert ops.eval_concat([(1,), (2,), (3,)]) == (1, 2, 3)


@given(seqs, seqs)
def test_concat_laws(s, u):
    assert ops.eval_concat([s, ()]) == s
    assert len(ops.eval_concat([s, u])) == len(s) + len(u)


# string-like


def test_stringlike_examples():
    assert ops.eval_indexof((7, 9, 7), (7,), 1) == ref.indexof([7, 9, 7], [7], 1) == 2
    assert ops.eval_indexof((7, 9), (4,), 0) == -1
    assert ops.eval_replace((7, 9, 7), (7,), (5, 5)) == tuple(ref.replace([7, 9, 7], [7], [5, 5])) == (5, 5, 9, 7)
    assert ops.eval_rev((1, 2, 3)) == (3, 2, 1)
    assert ops.eval_contains((9, 7), (7, 9, 7)) is True
    assert ops.eval_contains((7, 7), (7, 9, 7)) is False


def test_empty_pattern_conventions():
    assert ops.eval_indexof((7, 9), (), -1) == 0
    assert ops.eval_indexof((7, 9), (), 2) == 2
    assert ops.eval_indexof((7, 9), (), 3) == -1
    assert ops.eval_replace((7, 9), (), (1,)) == (1, 7, 9)
    assert ops.eval_replace_all((7, 9), (), (1,)) == (7, 9)


def test_replace_all():
    assert ops.eval_replace_all((7, 7, 7), (7, 7), (1,)) == (1, 7)
    assert ops.eval_replace_all((7, 9, 7), (7,), ()) == (9,)


@given(seqs)
def test_prefix_of_empty(s):
    assert ops.eval_prefixof((), s) and ops.eval_suffixof((), s)


@given(seqs, seqs, small_ints)
def test_stringlike_matches_reference(s, p, i):
    assert ops.eval_indexof(s, p, i) == ref.indexof(s, p, i)
    assert ops.eval_replace(s, p, (x,)) == tuple(ref.replace(s, p, [x]))
    assert ops.eval_contains(p, s) == bool(ref.factor_positions(s, p))
    assert ops.eval_prefixof(p, s) == (list(s[: len(p)]) == list(p))
    assert ops.eval_suffixof(p, s) == (len(p) <= len(s) and list(s[len(s) - len(p):]) == list(p))


def test_stringlike_profiles():
    with pytest.raises(ProfileViolation):
        ops.eval_stringlike("rev", [(1,)], Z)
    with pytest.raises(ProfileViolation):
        ops.eval_stringlike("replace_all", [(1,), (1,), ()], R)
    with pytest.raises(ProfileViolation):
        ops.eval_stringlike("contains", [(1,), (1,)], R)
    assert ops.eval_stringlike("indexof", [(1, 2), (2,)], C) == 1


# map / mapi / fold


def test_map():
    assert ops.eval_map(lambda v: v + 1, [(1, 2, 3)]) == (2, 3, 4)
    assert ops.eval_map(lambda p, q: p + q, [(1, 2, 3), (10, 20)]) == tuple(
        ref.map_n(lambda p, q: p + q, [1, 2, 3], [10, 20])) == (11, 22)
    assert ops.eval_map(lambda v: v, [()]) == ()
    with pytest.raises(ProfileViolation):
        ops.eval_map(lambda p, q: p, [(1,), (2,)], Z)
    with pytest.raises(ArityMismatch):
        ops.eval_map(lambda: 0, [])


def test_mapi():
    assert ops.eval_mapi(lambda i, v: i, 0, [(9, 9, 9)]) == tuple(ref.mapi(lambda i, v: i, 0, [9, 9, 9])) == (0, 1, 2)
    assert ops.eval_mapi(lambda i, v: v, 5, [(1, 2)]) == ()
    assert ops.eval_mapi(lambda i, v: (i, v), 1, [(1, 2, 3)]) == ((1, 2), (2, 3))
    with pytest.raises(ProfileViolation):
        ops.eval_mapi(lambda i, v: v, 0, [(1,)], C)


def test_mapi_negative_offset_reads_tokens():
    out = ops.eval_mapi(lambda i, v: v, -1, [(7,)], P, [INT], lambda v: "tok" if isinstance(v, Unspecified) else v)
    assert out == ("tok", 7)
    out = ops.eval_mapi(lambda i, v: v, -1, [(7,)], P, [INT])
    assert out[0] == Unspecified(TokenKey("seq.get", ((7,), -1), INT))


def test_fold():
    assert ops.eval_fold("fold_left", lambda acc, v: acc + v, None, 0, (1, 2, 3)) == 6
    assert ops.eval_fold("fold_left", lambda acc, v: acc + v, None, 42, ()) == 42
    f = lambda i, acc, v: acc + i * v  # noqa: E731
    assert ops.eval_fold("fold_lefti", f, 0, 0, (5, 5)) == ref.fold_lefti(f, 0, 0, [5, 5]) == 5
    with pytest.raises(ProfileViolation):
        ops.eval_fold("fold_left", f, None, 0, (), C)


def test_evaluator_higher_order_through_defs():
    xi, acc = Var("x", INT), Var("acc", INT)
    inc = FunDef("inc", (("x", INT),), INT, b.add(xi, 1))
    plus = FunDef("plus", (("acc", INT), ("x", INT)), INT, b.add(acc, xi))
    ev = Evaluator(P, defs={"inc": inc, "plus": plus})
    s = Var("s", SeqSort(INT))
    inc_ref = FunRef("inc", FnSort((INT,), INT))
    plus_ref = FunRef("plus", FnSort((INT, INT), INT))
    assert ev.eval(b.mk("seq.map", inc_ref, s), {"s": (1, 2, 3)}) == (2, 3, 4)
    assert ev.eval(b.mk("seq.fold_left", plus_ref, 0, s), {"s": (1, 2, 3)}) == 6


# invariants


@given(small_ints, elems, seqs, small_ints, seqs)
def test_length_laws(n, v, s, i, s2):
    assert len(ops.eval_const(n, v)) == max(n, 0)
    assert len(ops.eval_set(s, i, v)) == len(s)
    assert len(ops.eval_update(s, i, s2, P)) == len(s)
    assert len(ops.eval_update(s, i, s2, C)) == len(s)
    assert len(ops.eval_map(lambda p, q: p, [s, s2])) == min(len(s), len(s2))
    assert len(ops.eval_rev(s)) == len(s)


@given(seqs, small_ints, st.sampled_from(list(Profile)), elems)
def test_congruence(s, i, profile, tok):
    sv = Var("s", SE)
    iv = Var("i", INT)
    t = b.eq(b.get(sv, iv), b.get(sv, iv))
    key = TokenKey("seq.get", (s, i), E)
    assert Evaluator(profile).eval(t, {"s": s, "i": i}, {key: tok}) is True


@given(seqs, small_ints, elems)
def test_select_over_store(s, i, v):
    for j in range(len(s)):
        expect = v if (j == i and 0 <= i < len(s)) else s[j]
        assert ops.eval_set(s, i, v)[j] == expect


@given(seqs, st.integers(-4, 6), elems)
def test_set_update_bridge(s, i, v):
    expect = ops.eval_set(s, i, v)
    assert ops.eval_update(s, i, (v,), P) == expect
    assert ops.eval_update(s, i, (v,), C) == expect


SHARED = {
    # symbol: (arity builder over s, u, i, v)
    "seq.len": lambda s, u, i, v: b.seq_len(s),
    "seq.unit": lambda s, u, i, v: b.unit(v),
    "seq.concat": lambda s, u, i, v: b.concat(s, u),
    "seq.at": lambda s, u, i, v: b.mk("seq.at", s, i),
    "seq.get": lambda s, u, i, v: b.get(s, i),
    "seq.get_default": lambda s, u, i, v: b.mk("seq.get_default", s, i, v),
    "seq.contains": lambda s, u, i, v: b.mk("seq.contains", s, u),
    "seq.indexof": lambda s, u, i, v: b.mk("seq.indexof", s, u, i),
    "seq.replace": lambda s, u, i, v: b.mk("seq.replace", s, u, s),
    "seq.prefixof": lambda s, u, i, v: b.mk("seq.prefixof", s, u),
    "seq.suffixof": lambda s, u, i, v: b.mk("seq.suffixof", s, u),
    "seq.replace_all": lambda s, u, i, v: b.mk("seq.replace_all", s, u, s),
    "seq.rev": lambda s, u, i, v: b.mk("seq.rev", s),
    "seq.const": lambda s, u, i, v: b.mk("seq.const", i, v),
    "seq.set": lambda s, u, i, v: b.mk("seq.set", s, i, v),
    "seq.update": lambda s, u, i, v: b.mk("seq.update", s, i, u),
}


def _in_domain(name, s, u, i):
    if name in ("seq.get",):
        return 0 <= i < len(s)
    if name == "seq.update":
        return 0 <= i and i + len(u) <= len(s)
    return True


@pytest.mark.parametrize("name", sorted(SHARED))
@settings(max_examples=60, deadline=None)
@given(seqs, seqs, small_ints, elems)
def test_profile_agreement(name, s, u, i, v):
    """Inside every partial function's domain, profiles sharing a symbol agree."""
    if not _in_domain(name, s, u, i):
        return
    t = SHARED[name](Var("s", SE), Var("u", SE), Var("i", INT), Var("v", E))
    env = {"s": s, "u": u, "i": i, "v": v}
    outs = {p: Evaluator(p).eval(t, env) for p in Profile if SIGNATURE[name].available(p)}
    assert len(set(outs.values())) == 1, outs


@pytest.mark.parametrize("name", sorted(SHARED))
def test_profile_agreement_exhaustive(name):
    """Same property over every point of L = 3, card 2, window [-2, 4]."""
    bd = Bounds()
    t = SHARED[name](Var("s", SE), Var("u", SE), Var("i", INT), Var("v", E))
    profiles = [p for p in Profile if SIGNATURE[name].available(p)]
    evs = [Evaluator(p) for p in profiles]
    for s in bd.domain(SE):
        for u in bd.domain(SE):
            for i in bd.window:
                if not _in_domain(name, s, u, i):
                    continue
                for v in bd.domain(E):
                    env = {"s": s, "u": u, "i": i, "v": v}
                    outs = {ev.eval(t, env) for ev in evs}
                    assert len(outs) == 1, (name, env, outs)
