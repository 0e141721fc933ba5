import pytest

from seqkit import axioms
from seqkit.bounds import Bounds
from seqkit.core import build as b
from seqkit.core.check import sort_of
from seqkit.core.signature import Profile
from seqkit.core.sorts import BOOL, INT
from seqkit.core.terms import App, Forall, IntLit, Let, Var, free_vars, subterms
from seqkit.errors import ArityMismatch, SortMismatch, UnknownSchema, WindowTooSmall
from seqkit.oracle import check_equiv_bounded, check_valid_bounded
from seqkit.semantics.evaluator import Evaluator
from seqkit.semantics.values import Elem
from seqkit.smtlib import print_term

from strategies import E, SE

ALL = ["set", "const", "slice", "update_proposal", "update_cvc5", "select_over_store"]


def h(name, n=1):
    return axioms.default_holes(name, n)


def test_set_schema_shape():
    s1, i, v, s2 = h("set")
    t = axioms.schema_term("set", [s1, i, v, s2])
    j = Var("j", INT)
    expect = b.and_(
        b.eq(b.seq_len(s2), b.seq_len(s1)),
        b.forall("j", b.implies(b.between(0, j, b.seq_len(s1)),
                                b.eq(b.get(s2, j), b.ite(b.eq(j, i), v, b.get(s1, j))))),
    )
    assert t == expect


def test_const_schema_shape():
    l, v, s = h("const")
    t = axioms.schema_term("const", [l, v, s])
    assert isinstance(t, App) and t.op == "ite"
    assert t.args[0] == b.le(l, 0)
    assert t.args[1] == b.eq(s, b.empty(E))
    assert t.args[2].args[0] == b.eq(b.seq_len(s), l)
    assert isinstance(t.args[2].args[1], Forall)


def test_update_cvc5_has_outer_guard():
    s1, i, s2, s = h("update_cvc5")
    t = axioms.schema_term("update_cvc5", [s1, i, s2, s])
    guard = [u for u in subterms(t) if isinstance(u, App) and u.op == "ite" and u.args[2] == b.eq(s, s1)]
    assert guard and guard[0].args[0] == b.between(0, i, b.seq_len(s1))
    plain = axioms.schema_term("update_proposal", [s1, i, s2, s])
    assert b.eq(s, s1) not in set(subterms(plain))


def test_select_over_store_shape():
    s, i, v, j = h("select_over_store")
    t = axioms.schema_term("select_over_store", [s, i, v, j])
    assert t.op == "=>"
    left, right = t.args[1].args
    assert b.eq(i, j) in left.args and b.ne(i, j) in right.args


def test_schemas_are_well_sorted_and_closed_over_holes():
    for name in list(axioms.SCHEMAS):
        n = 2 if name in ("map_n",) else 1
        holes = h(name, n)
        t = axioms.schema_term(name, holes)
        assert sort_of(t) == BOOL
        names = {x.name for x in holes if isinstance(x, Var)}
        assert {v for v, _ in free_vars(t)} <= names


def test_fresh_binders_avoid_holes():
    s1, _, v, s2 = h("set")
    j = Var("j", INT)
    t = axioms.schema_term("set", [s1, j, v, s2])
    assert ("j", INT) in free_vars(t)


def test_errors():
    with pytest.raises(UnknownSchema):
        axioms.schema_term("concat", [])
    with pytest.raises(ArityMismatch):
        axioms.schema_term("set", h("set")[:3])
    s1, i, v, s2 = h("set")
    with pytest.raises(SortMismatch):
        axioms.schema_term("set", [s1, i, b.lit(1), s2])


def test_instantiate_set_window():
    lemmas = axioms.instantiate("set", h("set"), Bounds(max_len=2))
    assert len(lemmas) == 1
    f = lemmas[0].formula
    assert not any(isinstance(u, (Forall, Let)) for u in subterms(f))
    # one guarded conjunct per j in {0, 1}
    guards = [u for u in subterms(f) if isinstance(u, App) and u.op == "=>"]
    assert [g.args[0].args[0].args[1] for g in guards] == [IntLit(0), IntLit(1)]
    assert lemmas[0].schema == "set"


def test_instantiate_slice_expands_lets():
    f = axioms.instantiate("slice", h("slice"))[0].formula
    assert not any(isinstance(u, (Forall, Let)) for u in subterms(f))
    s1, i, j, s2 = h("slice")
    assert b.maximum(i, 0) in set(subterms(f))
    assert b.minimum(j, b.sub(b.seq_len(s1), 1)) in set(subterms(f))


def test_instantiate_map_per_index():
    holes = h("map_n", 2)
    f = axioms.instantiate("map_n", holes, Bounds(max_len=2))[0].formula
    text = print_term(f)
    assert "(seq.get s 0)" in text and "(seq.get s 1)" in text
    assert "(f (seq.get s1 0) (seq.get s2 0))" in text


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        axioms.instantiate("set", h("set"), Bounds(max_len=6))
    with pytest.raises(WindowTooSmall):
        axioms.instantiate("mapi_n", h("mapi_n"), Bounds(max_len=3, int_lo=-2, int_hi=3))
    axioms.instantiate("mapi_n", h("mapi_n"), Bounds(max_len=3, int_lo=-2, int_hi=4))


@pytest.mark.parametrize("name", ALL + ["map_n", "mapi_n"])
def test_ground_lemma_agrees_with_quantified(name):
    """Bounded grounding does not change the formula's truth within bounds."""
    holes = axioms.self_holes(name, h(name))
    q = axioms.schema_term(name, holes)
    g = axioms.instantiate(name, holes, Bounds())[0].formula
    res = check_equiv_bounded(q, g, Bounds(), axioms.get_schema(name).profile)
    assert res.equivalent, res


@pytest.mark.parametrize("name", ALL + ["map_n", "mapi_n"])
def test_ground_self_lemma_is_valid(name):
    g = axioms.instantiate(name, axioms.self_holes(name, h(name)), Bounds())[0].formula
    assert check_valid_bounded(g, Bounds(), axioms.get_schema(name).profile).valid


@pytest.mark.parametrize("name", ALL + ["map_n", "mapi_n"])
def test_evaluator_satisfies_axiom(name):
    for n in ((1, 2) if name == "map_n" else (1,)):
        phi = axioms.self_instance(name, h(name, n))
        r = check_valid_bounded(phi, Bounds(), axioms.get_schema(name).profile)
        assert r.valid, (name, n, r.counterexample)


def test_verbatim_slice_is_unsatisfiable_when_range_is_empty():
    # derived by brute force: no sequence has length j' - i' + 1 < 0
    phi = axioms.self_instance("slice_verbatim", h("slice_verbatim"))
    r = check_valid_bounded(phi, Bounds())
    assert r.status == "invalid"
    assert r.counterexample.base == {"i": -2, "j": -2, "s1": ()}
    s1, i, j, s2 = h("slice_verbatim")
    for cand in Bounds().domain(SE):
        ev = axioms.schema_term("slice_verbatim", [s1, i, j, s2])
        assert Evaluator().eval(ev, {"s1": (), "i": 1, "j": 1, "s2": cand}) is False


def test_update_schemas_agree_inside_guard():
    s1, i, s2, s = h("update_proposal")
    p = axioms.schema_term("update_proposal", [s1, i, s2, s])
    c = axioms.schema_term("update_cvc5", [s1, i, s2, s])
    guard = b.between(0, i, b.seq_len(s1))
    r = check_valid_bounded(b.implies(guard, b.eq(p, c)), Bounds(max_len=2))
    assert r.valid
    r = check_valid_bounded(b.eq(p, c), Bounds(max_len=2))
    assert not r.valid


def test_schema_profiles():
    assert axioms.get_schema("update_cvc5").profile is Profile.CVC5
    assert axioms.get_schema("set").profile is Profile.PROPOSAL


def test_mapi_self_instance_uses_tokens_for_negative_offsets():
    f, o, s1, s = h("mapi_n")
    phi = axioms.self_instance("mapi_n", [f, o, s1, s])
    r = check_valid_bounded(phi, Bounds(max_len=2))
    assert r.valid
    # a concrete negative-offset point: result has length k - o
    ev = Evaluator()
    from seqkit.semantics.values import FnTable, TokenKey
    table = FnTable(f.sort, tuple(((k, e), e) for k in Bounds().window for e in Bounds().domain(E)))
    key = TokenKey("seq.get", ((Elem("E", 1),), -1), E)
    out = ev.eval(axioms.operation_term("mapi_n", [f, o, s1, s]),
                  {"f": table, "o": -1, "s1": (Elem("E", 1),)}, {key: Elem("E", 0)})
    assert out == (Elem("E", 0), Elem("E", 1))
