from pathlib import Path

import pytest
from hypothesis import given, settings

from seqkit.bounds import Bounds
from seqkit.core import build as b
from seqkit.core.signature import PROPOSED_SYMBOLS, SIGNATURE
from seqkit.core.sorts import INT, SeqSort
from seqkit.core.terms import App, IntLit, Let, Var, subterms
from seqkit.errors import (
    ArityMismatch,
    ScriptSyntaxError,
    SeqkitError,
    SortError,
    SortMismatch,
    UnknownSymbol,
)
from seqkit.oracle import Model, Sat, check_sat_bounded
from seqkit.semantics.values import Elem, TokenKey
from seqkit.smtlib import parse_model, parse_script, parse_term, print_model, print_term
from seqkit.smtlib.printer import STRICT_ARITY_NOTE
from seqkit.smtlib.script import Assert, CheckSatBounded, Context, DeclareConst, Eval, SetOption
from seqkit.smtlib.sexpr import read_all

from strategies import E, SE, terms

HERE = Path(__file__).parent
CORPUS = (HERE / "corpus" / "terms.seq").read_text()


def corpus():
    script = parse_script(CORPUS)
    return script, [c.term for c in script.commands if isinstance(c, Eval)]


def test_three_command_script():
    sc = parse_script("(declare-const s (Seq Int)) (assert (= (seq.len s) 2)) (check-sat-bounded)")
    assert len(sc) == 3
    assert isinstance(sc.commands[0], DeclareConst) and sc.commands[0].sort == SeqSort(INT)
    assert isinstance(sc.commands[1], Assert)
    assert isinstance(sc.commands[2], CheckSatBounded)


def test_prefixof_assert():
    sc = parse_script("(declare-const s (Seq Int)) (declare-const u (Seq Int)) (assert (seq.prefixof u s))")
    t = sc.commands[-1].term
    assert t == App("seq.prefixof", (Var("u", SeqSort(INT)), Var("s", SeqSort(INT))))


def test_negative_literal():
    sc = parse_script("(declare-const s (Seq Int)) (eval (seq.slice s 0 (- 1)))")
    assert sc.commands[-1].term.args[2] == IntLit(-1)


def test_set_option_values():
    sc = parse_script("(set-option :profile cvc5) (set-option :int-lo -3) (set-option :int-hi (- 1))")
    assert sc.options() == {"profile": "cvc5", "int-lo": "-3", "int-hi": "-1"}
    assert all(isinstance(c, SetOption) for c in sc.commands)


def test_print_examples():
    assert print_term(b.unit(5)) == "(seq.unit 5)"
    a, bb, c = (Var(n, SE) for n in "abc")
    assert print_term(b.concat(a, bb, c)) == "(seq.concat a b c)"
    assert print_term(b.unit(-3)) == "(seq.unit (- 3))"
    assert print_term(b.empty(INT)) == "(as seq.empty (Seq Int))"


def test_nested_let_round_trip():
    s = Var("s", SE)
    x, y = Var("x", INT), Var("y", INT)
    t = Let((("x", b.seq_len(s)),), Let((("y", b.add(x, 1)), ("x", IntLit(0))), b.add(x, y)))
    ctx = Context(sorts={"E": E}, consts={"s": SE})
    assert parse_term(print_term(t), ctx) == t


def test_corpus_covers_every_symbol():
    _, ts = corpus()
    assert len(ts) >= 50
    used = {u.op for t in ts for u in subterms(t) if isinstance(u, App)}
    assert set(PROPOSED_SYMBOLS) <= used
    assert {n for n in SIGNATURE if n.startswith("arrc.")} <= used


def test_corpus_round_trip():
    script, ts = corpus()
    for t in ts:
        assert parse_term(print_term(t), script.context) == t, print_term(t)


def test_script_round_trip():
    from seqkit.smtlib import print_script

    script, _ = corpus()
    again = parse_script(print_script(script.commands))
    assert again.commands == script.commands


@settings(max_examples=150, deadline=None)
@given(terms(SE, 4))
def test_random_round_trip(t):
    ctx = Context(sorts={"E": E})
    for name, sort in ((v.name, v.sort) for v in subterms(t) if isinstance(v, Var)):
        if name != "x":
            ctx.consts[name] = sort
    from seqkit.semantics.evaluator import FunDef
    from strategies import F1, F2, FI, FOLD, FOLDI

    for f in (F1, F2, FI, FOLD, FOLDI):
        ctx.funs[f.name] = FunDef(f.name, tuple((f"x{k}", s) for k, s in enumerate(f.sort.args)), f.sort.ret)
    assert parse_term(print_term(t), ctx) == t


GOLDEN = {
    "unclosed.seq": (ScriptSyntaxError, (2, 1), "unexpected end of input inside list"),
    "extra_paren.seq": (ScriptSyntaxError, (1, 28), "unbalanced ')'"),
    "sort_error.seq": (SortMismatch, (2, 9), "second argument of =: expected Int, got Bool"),
    "concat_mismatch.seq": (SortMismatch, (2, 14), "argument 2 of seq.concat: expected Int, got Bool"),
    "unknown_symbol.seq": (UnknownSymbol, (2, 9), "unknown function symbol seq.frobnicate"),
    "unbound.seq": (UnknownSymbol, (1, 12), "unknown symbol x"),
    "arity.seq": (ArityMismatch, (2, 9), "seq.len expects 1 argument, got 2"),
    "bare_empty.seq": (SortError, (2, 7), "needs a sort annotation"),
    "bad_sort.seq": (UnknownSymbol, (1, 18), "unknown sort Seq"),
    "forall_bool.seq": (SortError, (1, 18), "must range over Int"),
    "string_literal.seq": (ScriptSyntaxError, (1, 9), "string literals are not supported"),
    "redeclare.seq": (SeqkitError, (2, 1), "already declared"),
}


def test_golden_covers_fixtures():
    assert {p.name for p in (HERE / "malformed").glob("*.seq")} == set(GOLDEN)


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_malformed_diagnostics(name):
    cls, pos, msg = GOLDEN[name]
    with pytest.raises(SeqkitError) as exc:
        parse_script((HERE / "malformed" / name).read_text())
    assert type(exc.value) is cls
    assert exc.value.pos == pos
    assert msg in exc.value.message
    assert str(exc.value).startswith(f"{pos[0]}:{pos[1]}: ")


def test_syntax_error_lists_expected_tokens():
    with pytest.raises(ScriptSyntaxError) as exc:
        parse_script("(assert (= 1 1)")
    assert exc.value.expected == (")",)


def test_reader_comments_and_quoting():
    sx = read_all('; hello\n(a |b c| "d")')
    assert [a.text for a in sx[0].items] == ["a", "b c", "d"]
    assert sx[0].items[2].string and not sx[0].items[1].string


def test_strict_note():
    s = Var("s", SE)
    t = b.mk("seq.replace", s, s, s)
    out = print_term(t, strict=True)
    assert out.splitlines()[0] == STRICT_ARITY_NOTE.format(op="seq.replace")
    assert print_term(b.mk("seq.indexof", s, s), strict=True) == "(seq.indexof s s)"
    ctx = Context(sorts={"E": E}, consts={"s": SE})
    assert parse_term(out, ctx) == t  # the note is a comment


def test_print_model_examples():
    m = Model({"s": (1, 2)}, {"s": SeqSort(INT)})
    assert print_model(m) == "(define-const s (Seq Int) (seq.concat (seq.unit 1) (seq.unit 2)))"
    m = Model({"s": ()}, {"s": SeqSort(INT)})
    assert print_model(m) == "(define-const s (Seq Int) (as seq.empty (Seq Int)))"


def test_token_line_in_model():
    # derived: the oracle must pick a value for the out-of-bounds read
    s = Var("s", SeqSort(INT))
    bounds = Bounds(max_len=2, int_hi=5)
    v = check_sat_bounded(b.eq(b.get(s, 5), 3), bounds)
    assert isinstance(v, Sat)
    text = print_model(v.model, bounds)
    assert text.splitlines() == [
        "(define-const s (Seq Int) (as seq.empty (Seq Int)))",
        "(undef (seq.get (as seq.empty (Seq Int)) 5) 3)",
    ]


def test_model_ordering_and_reparse():
    ctx = Context(sorts={"E": E}, consts={"b": SE, "a": INT})
    key1 = TokenKey("seq.get", ((), 1), E)
    key0 = TokenKey("seq.get", ((), 0), E)
    m = Model({"b": (), "a": 1}, {"b": SE, "a": INT}, {key1: Elem("E", 1), key0: Elem("E", 0)})
    text = print_model(m)
    lines = text.splitlines()
    assert lines[0].startswith("(define-const a") and lines[1].startswith("(define-const b")
    assert "0) E!val!0)" in lines[2] and "1) E!val!1)" in lines[3]
    back = parse_model(text, ctx)
    assert back.base == m.base and back.tokens == m.tokens


def test_function_model_reparse():
    from seqkit.core.sorts import FnSort
    from seqkit.core.terms import Call

    f = FnSort((E,), E)
    ctx = Context(sorts={"E": E}, consts={"v": E})
    from seqkit.semantics.evaluator import FunDef

    ctx.funs["f"] = FunDef("f", (("x!0", E),), E)
    phi = b.and_(b.eq(Call("f", (E,), E, (Var("v", E),)), Var("v", E)),
                 b.ne(Call("f", (E,), E, (b.get(b.unit(Var("v", E)), 0),)), Var("v", E)))
    assert check_sat_bounded(phi).status == "unsat-within-bounds"
    phi = b.ne(Call("f", (E,), E, (Var("v", E),)), Var("v", E))
    v = check_sat_bounded(phi)
    text = print_model(v.model)
    assert "(define-fun f ((x!0 E)) E" in text
    back = parse_model(text, ctx)
    assert back.base["f"].sort == f
    from seqkit.semantics.evaluator import Evaluator

    assert Evaluator().eval(phi, back.base, back.tokens) is True
