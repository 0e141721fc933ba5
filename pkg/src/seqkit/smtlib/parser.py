"""Parser for the sequence-script subset of SMT-LIB 2.6."""

from __future__ import annotations

import re

from ..core.check import sort_of
from ..core.signature import BUILTINS, SIGNATURE
from ..core.sorts import BOOL, INT, ElemSort, FnSort, IntSort, SeqSort, Sort
from ..core.terms import App, BoolLit, Call, ElemLit, Forall, FunRef, IntLit, Let, Term, Var
from ..errors import ScriptSyntaxError, SeqkitError, SortError, SortMismatch, UnknownSymbol
from ..semantics.evaluator import FunDef
from .script import (
    Assert,
    CheckSatBounded,
    Context,
    DeclareConst,
    DeclareFun,
    DeclareSort,
    DefineFun,
    Eval,
    Script,
    SetOption,
)
from .sexpr import Atom, SList, read_all

_ELEM_LIT = re.compile(r"^(.+)!val!(\d+)$")

COMMANDS = (
    "declare-sort", "declare-const", "declare-fun", "define-fun", "define-const",
    "assert", "check-sat-bounded", "check-sat", "eval", "set-option",
)


def parse_script(text: str | bytes, context: Context | None = None) -> Script:
    """Parse a whole script; raises a positioned SeqkitError on failure."""
    p = Parser(context.copy() if context else Context())
    commands = [p.command(sx) for sx in read_all(text)]
    return Script(commands, p.ctx)


def parse_term(text: str, context: Context | None = None, scope: dict[str, Sort] | None = None) -> Term:
    exprs = read_all(text)
    if len(exprs) != 1:
        pos = exprs[1].pos if len(exprs) > 1 else None
        raise ScriptSyntaxError("expected exactly one term", pos)
    return Parser(context or Context()).term(exprs[0], dict(scope or {}))


def parse_sort(text: str, context: Context | None = None) -> Sort:
    (sx,) = read_all(text)
    return Parser(context or Context()).sort(sx)


def _pos(sx):
    return getattr(sx, "pos", None)


class Parser:
    def __init__(self, ctx: Context):
        self.ctx = ctx

    # sorts

    def sort(self, sx) -> Sort:
        if isinstance(sx, Atom):
            if sx.text == "Int":
                return INT
            if sx.text == "Bool":
                return BOOL
            if sx.text in self.ctx.sorts:
                return self.ctx.sorts[sx.text]
            raise UnknownSymbol(f"unknown sort {sx.text}", sx.pos)
        if len(sx) == 2 and sx.head() == "Seq":
            return SeqSort(self.sort(sx[1]))
        raise ScriptSyntaxError("malformed sort", sx.pos, expected=("Int", "Bool", "(Seq <sort>)", "a declared sort"))

    # commands

    def command(self, sx):
        if not isinstance(sx, SList) or sx.head() is None:
            raise ScriptSyntaxError("expected a command", _pos(sx), expected=("(<command> ...)",))
        head = sx.head()
        handler = getattr(self, "cmd_" + head.replace("-", "_"), None)
        if handler is None:
            raise ScriptSyntaxError(f"unknown command {head}", sx.pos, expected=COMMANDS)
        return handler(sx)

    def _symbol(self, sx, what="a symbol") -> str:
        if not isinstance(sx, Atom) or sx.is_numeral() or sx.string:
            raise ScriptSyntaxError(f"expected {what}", _pos(sx), expected=(what,))
        return sx.text

    def _fresh(self, name, pos):
        if name in self.ctx.names() or name in SIGNATURE or name in BUILTINS:
            raise SeqkitError(f"symbol {name} is already declared", pos)

    def _arity(self, sx, n, usage):
        if len(sx) != n:
            raise ScriptSyntaxError(f"wrong number of arguments to {sx.head()}", sx.pos, expected=(usage,))

    def cmd_declare_sort(self, sx):
        if len(sx) not in (2, 3):
            raise ScriptSyntaxError("wrong number of arguments to declare-sort", sx.pos, expected=("(declare-sort <name> [0])",))
        name = self._symbol(sx[1])
        arity = 0
        if len(sx) == 3:
            if not isinstance(sx[2], Atom) or sx[2].text != "0":
                raise SeqkitError("only nullary sorts are supported", sx[2].pos)
        self._fresh(name, sx.pos)
        self.ctx.sorts[name] = ElemSort(name)
        return DeclareSort(name, arity, pos=sx.pos)

    def cmd_declare_const(self, sx):
        self._arity(sx, 3, "(declare-const <name> <sort>)")
        name = self._symbol(sx[1])
        self._fresh(name, sx.pos)
        s = self.sort(sx[2])
        self.ctx.consts[name] = s
        return DeclareConst(name, s, pos=sx.pos)

    def cmd_declare_fun(self, sx):
        self._arity(sx, 4, "(declare-fun <name> (<sort>*) <sort>)")
        name = self._symbol(sx[1])
        self._fresh(name, sx.pos)
        if not isinstance(sx[2], SList):
            raise ScriptSyntaxError("expected parameter sort list", _pos(sx[2]), expected=("(<sort>*)",))
        params = tuple(self.sort(p) for p in sx[2].items)
        ret = self.sort(sx[3])
        if not params:
            self.ctx.consts[name] = ret
            return DeclareConst(name, ret, pos=sx.pos)
        self._check_fn(params, ret, sx.pos)
        self.ctx.funs[name] = FunDef(name, tuple((f"x!{k}", s) for k, s in enumerate(params)), ret, None)
        return DeclareFun(name, params, ret, pos=sx.pos)

    def _check_fn(self, params, ret, pos):
        try:
            FnSort(params, ret)
        except TypeError as exc:
            raise SortError(str(exc), pos) from None

    def cmd_define_fun(self, sx):
        self._arity(sx, 5, "(define-fun <name> ((<param> <sort>)*) <sort> <term>)")
        name = self._symbol(sx[1])
        self._fresh(name, sx.pos)
        if not isinstance(sx[2], SList):
            raise ScriptSyntaxError("expected parameter list", _pos(sx[2]), expected=("((<name> <sort>)*)",))
        params = []
        for p in sx[2].items:
            if not isinstance(p, SList) or len(p) != 2:
                raise ScriptSyntaxError("malformed parameter", _pos(p), expected=("(<name> <sort>)",))
            params.append((self._symbol(p[0]), self.sort(p[1])))
        ret = self.sort(sx[3])
        if params:
            self._check_fn(tuple(s for _, s in params), ret, sx.pos)
        body = self.term(sx[4], dict(params))
        self._expect(body, ret, sx[4])
        fd = FunDef(name, tuple(params), ret, body)
        self.ctx.funs[name] = fd
        return DefineFun(name, tuple(params), ret, body, pos=sx.pos)

    def cmd_define_const(self, sx):
        self._arity(sx, 4, "(define-const <name> <sort> <term>)")
        name = self._symbol(sx[1])
        self._fresh(name, sx.pos)
        ret = self.sort(sx[2])
        body = self.term(sx[3], {})
        self._expect(body, ret, sx[3])
        self.ctx.funs[name] = FunDef(name, (), ret, body)
        return DefineFun(name, (), ret, body, pos=sx.pos)

    def _expect(self, t, want, sx):
        have = sort_of(t)
        if have != want:
            raise SortMismatch(f"expected a term of sort {want}, got {have}", want, have, _pos(sx))

    def cmd_assert(self, sx):
        self._arity(sx, 2, "(assert <term>)")
        t = self.term(sx[1], {})
        self._expect(t, BOOL, sx[1])
        return Assert(t, pos=sx.pos)

    def cmd_check_sat_bounded(self, sx):
        self._arity(sx, 1, "(check-sat-bounded)")
        return CheckSatBounded(pos=sx.pos)

    cmd_check_sat = cmd_check_sat_bounded

    def cmd_eval(self, sx):
        self._arity(sx, 2, "(eval <term>)")
        return Eval(self.term(sx[1], {}), pos=sx.pos)

    def cmd_set_option(self, sx):
        self._arity(sx, 3, "(set-option :<key> <value>)")
        key = sx[1]
        if not isinstance(key, Atom) or not key.text.startswith(":"):
            raise ScriptSyntaxError("expected an option keyword", _pos(key), expected=(":<keyword>",))
        val = sx[2]
        if isinstance(val, SList):
            if len(val) == 2 and val.head() == "-" and isinstance(val[1], Atom) and val[1].is_numeral():
                text = "-" + val[1].text
            else:
                raise ScriptSyntaxError("expected an option value", val.pos, expected=("an atom",))
        else:
            text = val.text
        return SetOption(key.text[1:], text, pos=sx.pos)

    # terms

    def term(self, sx, scope: dict[str, Sort]) -> Term:
        try:
            return self._term(sx, scope)
        except SeqkitError as exc:
            raise exc.at(_pos(sx))

    def _term(self, sx, scope) -> Term:
        if isinstance(sx, Atom):
            return self.atom(sx, scope)
        if not sx.items:
            raise ScriptSyntaxError("empty application", sx.pos, expected=("(<symbol> <term>*)",))
        head = sx.head()
        if head is None:
            raise ScriptSyntaxError("expected a function symbol", _pos(sx[0]), expected=("a symbol",))
        if head == "as":
            return self.qualified(sx)
        if head == "let":
            return self.let(sx, scope)
        if head == "forall":
            return self.forall(sx, scope)
        if head == "-" and len(sx) == 2 and isinstance(sx[1], Atom) and sx[1].is_numeral():
            return IntLit(-int(sx[1].text))
        args = [self.term(a, scope) for a in sx.items[1:]]
        if head in SIGNATURE or head in BUILTINS:
            return self._checked(App(head, tuple(args)), sx)
        if head in scope or head in self.ctx.consts:
            raise SortError(f"{head} is not a function", sx.pos)
        fd = self.ctx.funs.get(head)
        if fd is not None:
            return self._checked(Call(head, tuple(s for _, s in fd.params), fd.ret, tuple(args)), sx)
        raise UnknownSymbol(f"unknown function symbol {head}", sx.pos)

    def _checked(self, t, sx):
        try:
            sort_of(t)
        except SeqkitError as exc:
            raise exc.at(sx.pos)
        return t

    def atom(self, sx: Atom, scope) -> Term:
        text = sx.text
        if sx.string:
            raise ScriptSyntaxError("string literals are not supported", sx.pos, expected=("a term",))
        if sx.quoted and text in scope:
            return Var(text, scope[text])
        if not sx.quoted:
            if sx.is_numeral():
                return IntLit(int(text))
            if text == "true":
                return BoolLit(True)
            if text == "false":
                return BoolLit(False)
        if text in scope:
            return Var(text, scope[text])
        if text in self.ctx.consts:
            return Var(text, self.ctx.consts[text])
        fd = self.ctx.funs.get(text)
        if fd is not None:
            if not fd.params:
                return Call(text, (), fd.ret, ())
            return FunRef(text, FnSort(tuple(s for _, s in fd.params), fd.ret))
        m = _ELEM_LIT.match(text)
        if m and m.group(1) in self.ctx.sorts:
            return ElemLit(self.ctx.sorts[m.group(1)], int(m.group(2)))
        if text in ("seq.empty", "arrc.default"):
            raise SortError(f"{text} needs a sort annotation: (as {text} <sort>)", sx.pos)
        if text in SIGNATURE or text in BUILTINS:
            raise SortError(f"{text} used without arguments", sx.pos)
        raise UnknownSymbol(f"unknown symbol {text}", sx.pos)

    def qualified(self, sx) -> Term:
        if len(sx) != 3 or not isinstance(sx[1], Atom):
            raise ScriptSyntaxError("malformed qualified identifier", sx.pos, expected=("(as <symbol> <sort>)",))
        name = sx[1].text
        if name not in ("seq.empty", "arrc.default"):
            raise UnknownSymbol(f"cannot qualify {name}", sx[1].pos)
        return self._checked(App(name, (), self.sort(sx[2])), sx)

    def let(self, sx, scope) -> Term:
        if len(sx) != 3 or not isinstance(sx[1], SList) or not sx[1].items:
            raise ScriptSyntaxError("malformed let", sx.pos, expected=("(let ((<name> <term>)+) <term>)",))
        bindings = []
        inner = dict(scope)
        seen = set()
        for b in sx[1].items:
            if not isinstance(b, SList) or len(b) != 2:
                raise ScriptSyntaxError("malformed let binding", _pos(b), expected=("(<name> <term>)",))
            name = self._symbol(b[0])
            if name in seen:
                raise SeqkitError(f"duplicate let binding {name}", b.pos)
            seen.add(name)
            bound = self.term(b[1], scope)
            bindings.append((name, bound))
            inner[name] = sort_of(bound)
        return Let(tuple(bindings), self.term(sx[2], inner))

    def forall(self, sx, scope) -> Term:
        if len(sx) != 3 or not isinstance(sx[1], SList) or not sx[1].items:
            raise ScriptSyntaxError("malformed forall", sx.pos, expected=("(forall ((<name> Int)+) <term>)",))
        names = []
        for b in sx[1].items:
            if not isinstance(b, SList) or len(b) != 2:
                raise ScriptSyntaxError("malformed quantifier binding", _pos(b), expected=("(<name> Int)",))
            name = self._symbol(b[0])
            s = self.sort(b[1])
            if not isinstance(s, IntSort):
                raise SortError(f"quantified variable {name} must range over Int, not {s}", b.pos)
            names.append(name)
        inner = dict(scope)
        inner.update({n: INT for n in names})
        body = self.term(sx[2], inner)
        self._expect(body, BOOL, sx[2])
        for name in reversed(names):
            body = Forall(name, body)
        return body


def parse_model(text: str, context: Context, bounds=None):
    """Read back the output of ``print_model``.

    Function tables are rebuilt by evaluating each printed definition over the
    bounded domain of its parameters.
    """
    import itertools

    from ..bounds import Bounds
    from ..oracle import Model
    from ..semantics.evaluator import Evaluator
    from ..semantics.values import FnTable, TokenKey

    bounds = bounds or Bounds()
    p = Parser(context.copy())
    ev = Evaluator(bounds=bounds)
    base, sorts, tokens = {}, {}, {}
    for sx in read_all(text):
        if not isinstance(sx, SList) or sx.head() not in ("define-const", "define-fun", "undef"):
            raise ScriptSyntaxError("expected a model line", _pos(sx), expected=("define-const", "define-fun", "undef"))
        head = sx.head()
        if head == "define-const":
            p._arity(sx, 4, "(define-const <name> <sort> <value>)")
            name = p._symbol(sx[1])
            s = p.sort(sx[2])
            base[name] = ev.eval(p.term(sx[3], {}))
            sorts[name] = s
        elif head == "define-fun":
            p._arity(sx, 5, "(define-fun <name> ((<param> <sort>)*) <sort> <term>)")
            name = p._symbol(sx[1])
            params = [(p._symbol(q[0]), p.sort(q[1])) for q in sx[2].items]
            ret = p.sort(sx[3])
            body = p.term(sx[4], dict(params))
            fsort = FnSort(tuple(s for _, s in params), ret)
            points = itertools.product(*(bounds.domain(s) for _, s in params))
            entries = tuple(
                (pt, ev.eval(body, {n: v for (n, _), v in zip(params, pt)})) for pt in points
            )
            base[name] = FnTable(fsort, entries)
            sorts[name] = fsort
        else:
            p._arity(sx, 3, "(undef <read> <value>)")
            read = p.term(sx[1], {})
            if not isinstance(read, App) or read.op != "seq.get":
                raise SeqkitError("undef lines must name a seq.get read", sx[1].pos)
            key = TokenKey("seq.get", tuple(ev.eval(a) for a in read.args), sort_of(read))
            tokens[key] = ev.eval(p.term(sx[2], {}))
    return Model(base, sorts, tokens)
