"""Defining axioms of the proposed sequence operations, as quantified terms,
and their bounded instantiation into quantifier-free ground lemmas."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .bounds import Bounds
from .core import build as b
from .core.check import sort_of
from .core.signature import Profile
from .core.sorts import INT, ElemSort, FnSort, SeqSort, Sort
from .core.terms import App, Forall, FunRef, IntLit, Let, Term, Var, free_vars, fresh_name, substitute
from .errors import ArityMismatch, SortMismatch, UnknownSchema, WindowTooSmall


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    holes: tuple[str, ...]
    template: Callable[..., Term]
    # profile whose evaluator the schema describes
    profile: Profile = Profile.PROPOSAL
    # index of the hole standing for the operation's result, if any
    result_hole: int | None = None
    # the operation whose result fills ``result_hole``
    operation: str | None = None
    variadic: bool = False
    doc: str = ""


@dataclass(frozen=True)
class GroundLemma:
    formula: Term
    schema: str
    holes: tuple[Term, ...]


def _avoid(holes) -> set[str]:
    out = set()
    for h in holes:
        out |= {n for n, _ in free_vars(h)}
    return out


def _q(base: str, holes) -> Var:
    return Var(fresh_name(base, _avoid(holes)), INT)


def _elem(s: Term) -> Sort:
    sort = sort_of(s)
    if not isinstance(sort, SeqSort):
        raise SortMismatch(f"expected a sequence hole, got {sort}", actual=sort)
    return sort.elem


def _set(s1, i, v, s2):
    j = _q("j", (s1, i, v, s2))
    body = b.implies(
        b.between(0, j, b.seq_len(s1)),
        b.eq(b.get(s2, j), b.ite(b.eq(j, i), v, b.get(s1, j))),
    )
    return b.and_(b.eq(b.seq_len(s2), b.seq_len(s1)), b.forall(j.name, body))


def _const(n, v, s):
    i = _q("i", (n, v, s))
    body = b.implies(b.between(0, i, n), b.eq(b.get(s, i), v))
    return b.ite(
        b.le(n, 0),
        b.eq(s, b.empty(_elem(s))),
        b.and_(b.eq(b.seq_len(s), n), b.forall(i.name, body)),
    )


def _slice(s1, i, j, s2, clamp=True):
    holes = (s1, i, j, s2)
    avoid = _avoid(holes)
    lo = Var(fresh_name("i'", avoid), INT)
    hi = Var(fresh_name("j'", avoid | {lo.name}), INT)
    k = Var(fresh_name("k", avoid | {lo.name, hi.name}), INT)
    length = b.add(b.sub(hi, lo), 1)
    if clamp:
        length = b.maximum(length, 0)
    inner = b.and_(
        b.eq(b.seq_len(s2), length),
        b.forall(k.name, b.implies(
            b.and_(b.le(lo, k), b.le(k, hi)),
            b.eq(b.get(s2, b.sub(k, lo)), b.get(s1, k)),
        )),
    )
    bound = b.let(
        [(lo.name, b.maximum(i, 0)), (hi.name, b.minimum(j, b.sub(b.seq_len(s1), 1)))],
        inner,
    )
    return b.ite(b.le(i, j), bound, b.eq(s2, b.empty(_elem(s2))))


def _slice_verbatim(s1, i, j, s2):
    return _slice(s1, i, j, s2, clamp=False)


def _update_body(s1, i, s2, s, j):
    return b.implies(
        b.between(0, j, b.seq_len(s1)),
        b.eq(
            b.get(s, j),
            b.ite(
                b.and_(b.le(i, j), b.lt(j, b.add(i, b.seq_len(s2)))),
                b.get(s2, b.sub(j, i)),
                b.get(s1, j),
            ),
        ),
    )


def _update_proposal(s1, i, s2, s):
    j = _q("j", (s1, i, s2, s))
    return b.and_(
        b.eq(b.seq_len(s), b.seq_len(s1)),
        b.forall(j.name, _update_body(s1, i, s2, s, j)),
    )


def _update_cvc5(s1, i, s2, s):
    j = _q("j", (s1, i, s2, s))
    return b.and_(
        b.eq(b.seq_len(s), b.seq_len(s1)),
        b.ite(
            b.between(0, i, b.seq_len(s1)),
            b.forall(j.name, _update_body(s1, i, s2, s, j)),
            b.eq(s, s1),
        ),
    )


def _shortest(seqs) -> Term:
    k = b.seq_len(seqs[0])
    for s in seqs[1:]:
        k = b.minimum(k, b.seq_len(s))
    return k


def _map(f, *rest):
    *seqs, s = rest
    if not seqs:
        raise ArityMismatch("map schema needs at least one input sequence")
    holes = (f, *rest)
    avoid = _avoid(holes)
    k = Var(fresh_name("k", avoid), INT)
    t = Var(fresh_name("t", avoid | {k.name}), INT)
    body = b.implies(
        b.between(0, t, k),
        b.eq(b.get(s, t), b.call(f, *(b.get(x, t) for x in seqs))),
    )
    return b.let([(k.name, _shortest(seqs))], b.and_(b.eq(b.seq_len(s), k), b.forall(t.name, body)))


def _mapi(f, o, *rest):
    *seqs, s = rest
    if not seqs:
        raise ArityMismatch("mapi schema needs at least one input sequence")
    holes = (f, o, *rest)
    avoid = _avoid(holes)
    k = Var(fresh_name("k", avoid), INT)
    t = Var(fresh_name("t", avoid | {k.name}), INT)
    pos = b.add(o, t)
    body = b.implies(
        b.between(0, t, b.sub(k, o)),
        b.eq(b.get(s, t), b.call(f, pos, *(b.get(x, pos) for x in seqs))),
    )
    return b.let(
        [(k.name, _shortest(seqs))],
        b.ite(
            b.ge(o, k),
            b.eq(s, b.empty(_elem(s))),
            b.and_(b.eq(b.seq_len(s), b.sub(k, o)), b.forall(t.name, body)),
        ),
    )


def _select_over_store(s, i, v, j):
    a = b.mk("seq.set", s, i, v)
    read = b.get(a, j)
    return b.implies(
        b.between(0, j, b.seq_len(s)),
        b.or_(
            b.and_(b.eq(i, j), b.between(0, i, b.seq_len(s)), b.eq(read, v)),
            b.and_(b.ne(i, j), b.eq(read, b.get(s, j))),
        ),
    )


SCHEMAS: dict[str, AxiomSchema] = {
    s.name: s
    for s in [
        AxiomSchema("set", ("s1", "i", "v", "s2"), _set, result_hole=3, operation="seq.set",
                    doc="s2 = set(s1, i, v)"),
        AxiomSchema("const", ("l", "v", "s"), _const, result_hole=2, operation="seq.const",
                    doc="s = const(l, v)"),
        AxiomSchema("slice", ("s1", "i", "j", "s2"), _slice, result_hole=3, operation="seq.slice",
                    doc="s2 = slice(s1, i, j); length clamped at 0 when the clamped range is empty"),
        AxiomSchema("slice_verbatim", ("s1", "i", "j", "s2"), _slice_verbatim, result_hole=3,
                    operation="seq.slice",
                    doc="s2 = slice(s1, i, j) without the length clamp; unsatisfiable for i > len(s1)"),
        AxiomSchema("update_proposal", ("s1", "i", "s2", "s"), _update_proposal, result_hole=3,
                    operation="seq.update", doc="s = update(s1, i, s2), no bounds guard"),
        AxiomSchema("update_cvc5", ("s1", "i", "s2", "s"), _update_cvc5, profile=Profile.CVC5,
                    result_hole=3, operation="seq.update",
                    doc="s = update(s1, i, s2), identity unless 0 <= i < len(s1)"),
        AxiomSchema("map_n", ("f", "s1..sn", "s"), _map, result_hole=-1, operation="seq.map",
                    variadic=True, doc="s = map(f, s1, ..., sn)"),
        AxiomSchema("mapi_n", ("f", "o", "s1..sn", "s"), _mapi, result_hole=-1, operation="seq.mapi",
                    variadic=True, doc="s = mapi(f, o, s1, ..., sn)"),
        AxiomSchema("select_over_store", ("s", "i", "v", "j"), _select_over_store,
                    doc="read-over-write for seq.set"),
    ]
}


def get_schema(name: str) -> AxiomSchema:
    try:
        return SCHEMAS[name]
    except KeyError:
        raise UnknownSchema(f"unknown schema {name!r} (one of {', '.join(SCHEMAS)})") from None


def schema_term(name: str, holes: Sequence[Term]) -> Term:
    """Quantified defining formula of ``name`` with its holes filled."""
    schema = get_schema(name)
    holes = tuple(holes)
    if not schema.variadic and len(holes) != len(schema.holes):
        raise ArityMismatch(f"schema {name} takes {len(schema.holes)} holes, got {len(holes)}")
    return schema.template(*holes)


def operation_term(name: str, holes: Sequence[Term]) -> Term | None:
    """The operation application the schema's result hole stands for,
    built from the other holes (e.g. ``seq.set(s1, i, v)`` for ``set``)."""
    schema = get_schema(name)
    if schema.operation is None:
        return None
    args = list(holes)
    del args[schema.result_hole]
    return b.mk(schema.operation, *args)


def self_holes(name: str, holes: Sequence[Term]) -> list[Term]:
    """``holes`` with the result hole replaced by the operation itself."""
    schema = get_schema(name)
    holes = list(holes)
    if schema.result_hole is not None:
        holes[schema.result_hole] = operation_term(name, holes)
    return holes


def self_instance(name: str, holes: Sequence[Term]) -> Term:
    """True in a model iff the evaluator's output satisfies the axiom there."""
    return schema_term(name, self_holes(name, holes))


def default_holes(name: str, n: int = 1, elem: Sort | None = None) -> list[Term]:
    """Fresh variables for every hole; sequences range over ``elem``."""
    elem = elem or ElemSort("E")
    seq = SeqSort(elem)
    if name in ("set",):
        return [Var("s1", seq), Var("i", INT), Var("v", elem), Var("s2", seq)]
    if name == "const":
        return [Var("l", INT), Var("v", elem), Var("s", seq)]
    if name in ("slice", "slice_verbatim"):
        return [Var("s1", seq), Var("i", INT), Var("j", INT), Var("s2", seq)]
    if name in ("update_proposal", "update_cvc5"):
        return [Var("s1", seq), Var("i", INT), Var("s2", seq), Var("s", seq)]
    if name == "map_n":
        f = FunRef("f", FnSort((elem,) * n, elem))
        return [f, *(Var(f"s{k + 1}", seq) for k in range(n)), Var("s", seq)]
    if name == "mapi_n":
        f = FunRef("f", FnSort((INT,) + (elem,) * n, elem))
        return [f, Var("o", INT), *(Var(f"s{k + 1}", seq) for k in range(n)), Var("s", seq)]
    if name == "select_over_store":
        return [Var("s", seq), Var("i", INT), Var("v", elem), Var("j", INT)]
    raise UnknownSchema(f"unknown schema {name!r}")


def index_range(name: str, bounds: Bounds) -> range:
    """Integers a quantified index can take on a guard-satisfying instance
    when every sequence hole has length at most ``max_len``."""
    top = bounds.max_len - 1
    if name == "mapi_n":
        top = bounds.max_len - 1 - min(bounds.int_lo, 0)
    return range(0, max(top, -1) + 1)


def check_window(name: str, bounds: Bounds) -> range:
    need = index_range(name, bounds)
    if need and (need.start < bounds.int_lo or need[-1] > bounds.int_hi):
        raise WindowTooSmall(
            f"schema {name} needs indices {need.start}..{need[-1]} but the window is "
            f"[{bounds.int_lo}, {bounds.int_hi}]"
        )
    return need


def ground(t: Term, indices: Sequence[int]) -> Term:
    """Inline lets and expand each forall into a conjunction over ``indices``."""
    if isinstance(t, Forall):
        body = ground(t.body, indices)
        return b.and_(*(substitute(body, {t.var: IntLit(j)}) for j in indices))
    if isinstance(t, Let):
        body = substitute(t.body, {n: ground(v, indices) for n, v in t.bindings})
        return ground(body, indices)
    if isinstance(t, App):
        return App(t.op, tuple(ground(a, indices) for a in t.args), t.ann)
    return t


def instantiate(name: str, holes: Sequence[Term], bounds: Bounds | None = None) -> list[GroundLemma]:
    """Ground lemmas for one instance of ``name``.

    Raises WindowTooSmall when the integer window cannot hold every index
    the quantifier guards admit.
    """
    bounds = bounds or Bounds()
    indices = check_window(name, bounds)
    formula = ground(schema_term(name, holes), indices)
    sort_of(formula)
    return [GroundLemma(formula, name, tuple(holes))]
