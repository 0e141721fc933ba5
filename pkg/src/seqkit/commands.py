"""Batch commands behind the CLI.  Each returns a ``Report``: a list of
JSON-ready records plus an exit code; text output is rendered from the
same records so both formats carry identical verdicts."""

from __future__ import annotations

import json
import time
from collections.abc import Mapping
from dataclasses import dataclass, field, replace

from . import axioms, oracle, reduction
from .bounds import Bounds
from .core import build as b
from .core.check import sort_of
from .core.signature import Profile
from .core.sorts import ElemSort, FnSort, SeqSort
from .core.terms import App, FunRef, Term, Var, subterms
from .errors import NotInFragment, SeqkitError
from .oracle import Model, Sat, Search
from .semantics.evaluator import Evaluator, require_profile
from .semantics.values import Unspecified
from .smtlib.parser import parse_model, parse_script
from .smtlib.printer import (
    print_command,
    print_model,
    print_sort,
    print_term,
    print_token_key,
    print_value,
    symbol,
)
from .smtlib.script import (
    Assert,
    CheckSatBounded,
    Context,
    DefineFun,
    Eval,
    Script,
    SetOption,
)

SCHEMA_VERSION = "seqkit-report/1"

EXIT_SAT, EXIT_UNSAT, EXIT_ERROR, EXIT_UNKNOWN, EXIT_FRAGMENT = 0, 1, 2, 3, 4
_VERDICT_EXIT = {"sat": EXIT_SAT, "unsat-within-bounds": EXIT_UNSAT, "unknown": EXIT_UNKNOWN}

# script option -> Bounds field
_BOUND_OPTIONS = {
    "max-len": "max_len",
    "int-lo": "int_lo",
    "int-hi": "int_hi",
    "elem-card": "elem_card",
    "delta-int": "delta_int",
}


@dataclass(frozen=True)
class RunConfig:
    profile: Profile = Profile.PROPOSAL
    bounds: Bounds = field(default_factory=Bounds)
    arrc_slice: str = "inclusive"
    output: str = "text"
    ceiling: int = field(default_factory=oracle.default_ceiling)
    audit: bool = False
    verify: bool = False
    compare: Profile | None = None

    def with_options(self, options: Mapping[str, str], overrides: Mapping[str, object] = ()) -> "RunConfig":
        """Script ``set-option`` values first, then explicit overrides (CLI flags)."""
        merged: dict[str, object] = {}
        for key, value in options.items():
            if key in _BOUND_OPTIONS:
                merged[_BOUND_OPTIONS[key]] = _int_option(key, value)
            elif key == "profile":
                merged["profile"] = _profile(value)
            elif key == "compare":
                merged["compare"] = _profile(value)
            elif key == "arrc-slice":
                merged["arrc_slice"] = value
            elif key == "ceiling":
                merged["ceiling"] = _int_option(key, value)
            else:
                raise SeqkitError(f"unknown option :{key}")
        merged.update({k: v for k, v in dict(overrides).items() if v is not None})
        bound_kw = {k: merged.pop(k) for k in list(merged) if k in _BOUND_OPTIONS.values()}
        cfg = replace(self, **merged)
        if bound_kw:
            cfg = replace(cfg, bounds=cfg.bounds.replace(**bound_kw))
        if cfg.arrc_slice not in ("inclusive", "exclusive"):
            raise SeqkitError(f"unknown arrc.slice convention {cfg.arrc_slice!r}")
        return cfg

    def to_json(self) -> dict:
        bd = self.bounds
        return {
            "profile": str(self.profile),
            "bounds": {
                "max_len": bd.max_len, "int_lo": bd.int_lo, "int_hi": bd.int_hi,
                "elem_card": bd.elem_card, "delta_int": bd.delta_int,
            },
            "arrc_slice": self.arrc_slice,
            "ceiling": self.ceiling,
        }

    def search(self, defs=None, profile: Profile | None = None) -> Search:
        return Search(self.bounds, profile or self.profile, defs, self.arrc_slice, self.ceiling)


def _int_option(key, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise SeqkitError(f"option :{key} expects an integer, got {value!r}") from None


def _profile(value) -> Profile:
    try:
        return Profile.parse(str(value))
    except ValueError as exc:
        raise SeqkitError(str(exc)) from None


@dataclass
class Report:
    command: str
    config: RunConfig
    records: list[dict] = field(default_factory=list)
    exit_code: int = 0

    def add(self, kind: str, **data) -> dict:
        rec = {"kind": kind, **data}
        self.records.append(rec)
        return rec

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config.to_json(),
            "records": self.records,
            "exit_code": self.exit_code,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def text(self) -> str:
        return "\n".join(line for rec in self.records for line in _render(rec))


def _pos(p):
    return list(p) if p else None


# text rendering


def _render(rec: dict) -> list[str]:
    kind = rec["kind"]
    if kind == "check":
        out = [rec["status"]]
        if rec.get("model"):
            out.append(rec["model"])
        if rec.get("audit"):
            out.append(f"; audit: {rec['audit']}")
        return out
    if kind == "eval":
        line = rec["value"]
        if rec.get("unspecified"):
            line += "  ; unspecified: " + ", ".join(rec["unspecified"])
        if "compare" in rec:
            c = rec["compare"]
            mark = "differs" if c["differs"] else "agrees"
            line += f"  ; {c['profile']}: {c['value']} ({mark})"
        return [line]
    if kind == "diff":
        return _render_diff(rec)
    if kind == "reduce":
        out = [rec["script"]] if rec.get("script") else []
        for v in rec.get("verify", []):
            out.append(f"; verify {v['term']} under {v['profile']} -> arrayc: {v['status']}")
            if v.get("witness"):
                w = v["witness"]
                out.append(f";   witness: {w['model'].replace(chr(10), ' ')}")
                out.append(f";   original = {w['left']}, reduced = {w['right']}")
            if v.get("note"):
                out.append(f";   {v['note']}")
            if "guarded_status" in v:
                out.append(f";   on 0 <= i and i+len(s2) <= len(s1): {v['guarded_status']}")
            if "outside_guard" in v:
                out.append(f";   divergences outside the update guard: {v['outside_guard']}")
        return out
    if kind == "lemmas":
        return [rec["script"]]
    if kind == "fragment":
        out = [f"{rec['term']}"]
        if rec["in_fragment"]:
            out.append("  in fragment")
        else:
            out.append("  outside fragment: " + ", ".join(rec["offenders"]))
        for w in rec["shifting"]:
            out.append(f"  index shifting on {w['sequence']} via {w['var']}: offsets {w['offsets'][0]} vs {w['offsets'][1]}")
        return out
    if kind == "error":
        where = f"{rec['pos'][0]}:{rec['pos'][1]}: " if rec.get("pos") else ""
        return [f"error: {where}{rec['message']}"]
    return [json.dumps(rec)]


def _render_diff(rec: dict) -> list[str]:
    out = [f"; diff {rec['term']} : {rec['profiles'][0]} vs {rec['profiles'][1]}",
           f"; {rec['count']} witnesses"]
    cats = rec.get("categories")
    if cats:
        width = max(len(c) for c in cats)
        out.append(f"; {'category'.ljust(width)}  witnesses")
        for c, n in cats.items():
            out.append(f"; {c.ljust(width)}  {n}")
    for w in rec["witnesses"][: rec.get("shown", len(rec["witnesses"]))]:
        tag = f" [{w['category']}]" if w.get("category") else ""
        out.append(f"; witness{tag}: {w['model'].replace(chr(10), ' ')}")
        out.append(f";   {rec['profiles'][0]} = {w['left']}")
        out.append(f";   {rec['profiles'][1]} = {w['right']}")
    if rec.get("audit"):
        out.append(f"; audit: {rec['audit']}")
    return out


# value display


class _Symbolic(dict):
    """Token map that answers every missing read with the placeholder itself."""

    def __missing__(self, key):
        return Unspecified(key)


def _show(v, sort) -> str:
    if isinstance(v, Unspecified):
        return print_token_key(v.key)
    if isinstance(sort, SeqSort) and isinstance(v, tuple) and any(isinstance(x, Unspecified) for x in v):
        parts = [f"(seq.unit {_show(x, sort.elem)})" for x in v]
        return parts[0] if len(parts) == 1 else "(seq.concat " + " ".join(parts) + ")"
    return print_value(v, sort)


def show_value(v, sort) -> str:
    return _show(v, sort)


def _ground(search: Search, profile: Profile, t: Term, base, tokens) -> tuple[str, list[str]]:
    """Value of ``t``; if unassigned tokens leave it undetermined, a symbolic
    rendering plus the keys it depends on."""
    ev = search.evaluator(profile)
    sort = sort_of(t)
    outcomes, keys = [], set()
    budget = oracle._Budget(search.ceiling)
    try:
        for u, (val,) in search.branches([(ev, t)], dict(base), budget, tokens):
            keys |= u.keys() - tokens.keys()
            if val not in outcomes:
                outcomes.append(val)
    except oracle._OutOfBudget:
        raise SeqkitError(f"evaluation budget of {search.ceiling} exhausted") from None
    if len(outcomes) == 1:
        return _show(outcomes[0], sort), []
    names = sorted(print_token_key(k) for k in keys)
    symbolic = ev.eval(t, base, _Symbolic(tokens))
    if isinstance(symbolic, Unspecified) or (
        isinstance(symbolic, tuple) and any(isinstance(x, Unspecified) for x in symbolic)
    ):
        return _show(symbolic, sort), names
    return "unspecified", names


# run


def load(text: str) -> Script:
    return parse_script(text)


def cmd_run(text: str, cfg: RunConfig, overrides: Mapping[str, object] = ()) -> Report:
    """Execute a script: assertions accumulate, each check invokes the oracle,
    each eval grounds a term (in the last model found, if any)."""
    script = load(text)
    cfg = cfg.with_options(script.options(), overrides)
    report = Report("run", cfg)
    ctx = script.context
    defs = ctx.defs()
    asserts: list[Term] = []
    model: Model | None = None
    last = None
    for c in script.commands:
        if isinstance(c, Assert):
            require_profile([c.term], cfg.profile, defs, c.pos)
            asserts.append(c.term)
        elif isinstance(c, CheckSatBounded):
            phi = b.and_(*asserts)
            t0 = time.perf_counter()
            verdict = oracle.check_sat_bounded(
                phi, cfg.bounds, cfg.profile, defs=defs, arrc_slice=cfg.arrc_slice, ceiling=cfg.ceiling
            )
            rec = report.add(
                "check",
                status=verdict.status,
                pos=_pos(c.pos),
                time_s=round(time.perf_counter() - t0, 4),
                universe=verdict.stats.get("universe", 0),
                evaluations=verdict.stats.get("evaluations", 0),
                model=None,
            )
            if isinstance(verdict, Sat):
                model = verdict.model
                rec["model"] = print_model(model, cfg.bounds)
                if cfg.audit:
                    rec["audit"] = "ok" if audit_model(phi, rec["model"], ctx, cfg) else "failed"
            else:
                model = None
                if isinstance(verdict, oracle.Unknown):
                    rec["reason"] = verdict.reason
            last = verdict.status
        elif isinstance(c, Eval):
            report.records.append(_eval_record(c.term, c.pos, ctx, cfg, model))
    if last is not None:
        report.exit_code = _VERDICT_EXIT[last]
    if any(r.get("audit") == "failed" for r in report.records):
        report.exit_code = EXIT_ERROR
    return report


def audit_model(phi: Term, model_text: str, ctx: Context, cfg: RunConfig) -> bool:
    """Re-read a printed model and re-evaluate ``phi`` in it."""
    m = parse_model(model_text, ctx, cfg.bounds)
    ev = Evaluator(cfg.profile, cfg.bounds, ctx.defs(), cfg.arrc_slice)
    return ev.eval(phi, m.base, m.tokens) is True


def _eval_record(t: Term, pos, ctx: Context, cfg: RunConfig, model: Model | None) -> dict:
    defs = ctx.defs()
    require_profile([t], cfg.profile, defs, pos)
    search = cfg.search(defs)
    values, funs = search.symbols([t])
    base = dict(model.base) if model else {}
    tokens = dict(model.tokens) if model else {}
    missing = sorted(n for n, _ in values | funs if n not in base)
    if missing:
        raise SeqkitError(
            f"eval needs values for {', '.join(missing)}: no model from check-sat-bounded", pos
        )
    value, unspec = _ground(search, cfg.profile, t, base, tokens)
    rec = {"kind": "eval", "term": print_term(t), "pos": _pos(pos), "value": value, "unspecified": unspec}
    if cfg.compare is not None:
        require_profile([t], cfg.compare, defs, pos)
        other, other_unspec = _ground(search, cfg.compare, t, base, tokens)
        rec["compare"] = {
            "profile": str(cfg.compare),
            "value": other,
            "unspecified": other_unspec,
            "differs": other != value or bool(unspec or other_unspec),
        }
    return rec


def cmd_eval(text: str, cfg: RunConfig, overrides: Mapping[str, object] = ()) -> Report:
    """Only declarations, definitions and evals; assertions are ignored."""
    script = load(text)
    cfg = cfg.with_options(script.options(), overrides)
    report = Report("eval", cfg)
    for c in script.commands:
        if isinstance(c, Eval):
            report.records.append(_eval_record(c.term, c.pos, script.context, cfg, None))
    return report


# diff

UPDATE_CATEGORIES = ("no-overflow", "left-overflow", "right-overflow", "left-right-overflow")
ACCESS_CATEGORIES = ("in-bounds", "out-of-bounds")


def update_category(i: int, len1: int, len2: int) -> str:
    left = i < 0
    right = i + len2 > len1
    if left and right:
        return "left-right-overflow"
    if left:
        return "left-overflow"
    if right:
        return "right-overflow"
    return "no-overflow"


def _focus(t: Term, ops) -> App | None:
    for u in subterms(t):
        if isinstance(u, App) and u.op in ops:
            return u
    return None


def classify(t: Term, d: oracle.Divergence, ev: Evaluator) -> str | None:
    """Overflow category of a witness, from the first update (or access) in ``t``."""
    base, tokens = d.model.base, d.model.tokens
    upd = _focus(t, ("seq.update",))
    if upd is not None:
        s1, i, s2 = (ev.eval(a, base, tokens) for a in upd.args)
        return update_category(i, len(s1), len(s2))
    acc = _focus(t, ("seq.get", "arrc.nth", "seq.at", "seq.get_default"))
    if acc is not None:
        s, i = (ev.eval(a, base, tokens) for a in acc.args[:2])
        return "in-bounds" if 0 <= i < len(s) else "out-of-bounds"
    return None


def diff_record(t: Term, cfg: RunConfig, pa: Profile, pb: Profile, defs=None, ctx=None, shown: int = 5) -> dict:
    defs = defs or {}
    require_profile([t], pa, defs)
    require_profile([t], pb, defs)
    t0 = time.perf_counter()
    divs = oracle.diff_profiles(
        t, cfg.bounds, pa, pb, defs=defs, arrc_slice=cfg.arrc_slice, ceiling=cfg.ceiling
    )
    sort = sort_of(t)
    ev = Evaluator(Profile.PROPOSAL, cfg.bounds, defs, cfg.arrc_slice)
    witnesses = []
    for d in divs:
        witnesses.append({
            "model": print_model(d.model, cfg.bounds),
            "left": _show(d.left, sort),
            "right": _show(d.right, sort),
            "category": classify(t, d, ev),
        })
    rec = {
        "kind": "diff",
        "term": print_term(t),
        "profiles": [str(pa), str(pb)],
        "count": len(witnesses),
        "witnesses": witnesses,
        "shown": shown,
        "time_s": round(time.perf_counter() - t0, 4),
    }
    if _focus(t, ("seq.update",)) is not None:
        cats = UPDATE_CATEGORIES
    elif _focus(t, ("seq.get", "arrc.nth", "seq.at", "seq.get_default")) is not None:
        cats = ACCESS_CATEGORIES
    else:
        cats = ()
    if cats:
        rec["categories"] = {c: sum(w["category"] == c for w in witnesses) for c in cats}
    if cfg.audit:
        rec["audit"] = "ok" if _audit_diff(t, divs, cfg, pa, pb, defs, ctx) else "failed"
    return rec


def _audit_diff(t, divs, cfg, pa, pb, defs, ctx) -> bool:
    ctx = ctx or Context()
    eva = Evaluator(pa, cfg.bounds, defs, cfg.arrc_slice)
    evb = Evaluator(pb, cfg.bounds, defs, cfg.arrc_slice)
    for d in divs:
        m = parse_model(print_model(d.model, cfg.bounds), model_context(ctx, d.model), cfg.bounds)
        if eva.eval(t, m.base, m.tokens) != d.left or evb.eval(t, m.base, m.tokens) != d.right:
            return False
    return True


def model_context(ctx: Context, model: Model) -> Context:
    """``ctx`` extended with the element sorts a model mentions."""
    out = ctx.copy()
    for s in model.sorts.values():
        for x in _sorts_in(s):
            if isinstance(x, ElemSort):
                out.sorts.setdefault(x.name, x)
    return out


def _sorts_in(s):
    yield s
    if isinstance(s, SeqSort):
        yield from _sorts_in(s.elem)
    if isinstance(s, FnSort):
        for a in s.args:
            yield from _sorts_in(a)
        yield from _sorts_in(s.ret)


def _terms_of(script: Script) -> list[Term]:
    evals = [c.term for c in script.commands if isinstance(c, Eval)]
    if evals:
        return evals
    asserts = [c.term for c in script.commands if isinstance(c, Assert)]
    return [b.and_(*asserts)] if asserts else []


def cmd_diff(text: str, cfg: RunConfig, pa: Profile, pb: Profile, overrides=(), shown: int = 5) -> Report:
    """Differential witnesses for every eval term (or the assertions) of a script."""
    script = load(text)
    cfg = cfg.with_options(script.options(), overrides)
    report = Report("diff", cfg)
    defs = script.context.defs()
    for t in _terms_of(script):
        report.records.append(diff_record(t, cfg, pa, pb, defs, script.context, shown))
    if any(r.get("audit") == "failed" for r in report.records):
        report.exit_code = EXIT_ERROR
    return report


# reduce

AT_CAVEAT = "at caveat: the original reads an in-bounds element equal to the default, the reduction returns empty"


def update_guard(t: Term) -> Term | None:
    """0 <= i and i + len(s2) <= len(s1) for every update in ``t``."""
    conds = []
    for u in subterms(t):
        if isinstance(u, App) and u.op == "seq.update":
            s1, i, s2 = u.args
            conds.append(b.and_(b.le(0, i), b.le(b.add(i, b.seq_len(s2)), b.seq_len(s1))))
    return b.and_(*conds) if conds else None


def original_profiles(t: Term, defs=None) -> list[Profile]:
    """Profiles to evaluate an original fragment term under when comparing
    with its reduction: ArrayC itself where possible, otherwise every
    profile that has the update operation."""
    try:
        require_profile([t], Profile.ARRAYC, defs)
        return [Profile.ARRAYC]
    except SeqkitError:
        pass
    out = []
    for p in (Profile.PROPOSAL, Profile.CVC5):
        try:
            require_profile([t], p, defs)
            out.append(p)
        except SeqkitError:
            continue
    return out


def verify_reduction(t: Term, cfg: RunConfig, defs=None) -> list[dict]:
    r = reduction.reduce_to_arrayc(t)
    sort = sort_of(t)
    out = []
    guard = update_guard(t)
    for p in original_profiles(t, defs):
        eq = oracle.check_equiv_bounded(
            t, r, cfg.bounds, p, Profile.ARRAYC, defs=defs, arrc_slice=cfg.arrc_slice, ceiling=cfg.ceiling
        )
        rec = {"term": print_term(t), "profile": str(p), "status": eq.status, "witness": None}
        if eq.witness is not None:
            w = eq.witness
            rec["witness"] = {
                "model": print_model(w.model, cfg.bounds),
                "left": _show(w.left, sort),
                "right": _show(w.right, sort),
            }
            if _focus(t, ("seq.at",)) is not None:
                rec["note"] = AT_CAVEAT
        if guard is not None:
            g = oracle.check_equiv_bounded(
                t, r, cfg.bounds, p, Profile.ARRAYC, guard=guard, defs=defs,
                arrc_slice=cfg.arrc_slice, ceiling=cfg.ceiling,
            )
            rec["guarded_status"] = g.status
            rec["outside_guard"] = len(oracle.diff_terms(
                t, r, cfg.bounds, p, Profile.ARRAYC, guard=b.not_(guard), defs=defs,
                arrc_slice=cfg.arrc_slice, ceiling=cfg.ceiling,
            ))
        out.append(rec)
    return out


def reduce_script(script: Script) -> list:
    """The script with every term rewritten into the Array_c vocabulary."""
    out = [SetOption("profile", "arrayc")]
    for c in script.commands:
        if isinstance(c, SetOption):
            if c.key != "profile":
                out.append(c)
        elif isinstance(c, DefineFun):
            out.append(replace(c, body=reduction.reduce_to_arrayc(c.body)))
        elif isinstance(c, Assert):
            out.append(replace(c, term=reduction.reduce_to_arrayc(c.term)))
        elif isinstance(c, Eval):
            out.append(replace(c, term=reduction.reduce_to_arrayc(c.term)))
        else:
            out.append(c)
    return out


def cmd_reduce(text: str, cfg: RunConfig, overrides=()) -> Report:
    script = load(text)
    cfg = cfg.with_options(script.options(), overrides)
    report = Report("reduce", cfg)
    try:
        reduced = reduce_script(script)
    except NotInFragment as exc:
        report.add("error", message=str(exc), pos=None, offenders=list(exc.offenders))
        report.exit_code = EXIT_FRAGMENT
        return report
    rec = report.add("reduce", script="\n".join(print_command(c) for c in reduced))
    if cfg.verify:
        defs = script.context.defs()
        rec["verify"] = [v for t in _terms_of_all(script) for v in verify_reduction(t, cfg, defs)]
    return report


def _terms_of_all(script: Script) -> list[Term]:
    return [c.term for c in script.commands if isinstance(c, (Assert, Eval))]


# lemmas


def lemma_script(name: str, cfg: RunConfig, n: int = 1, self_instance: bool = False, negate: bool = False) -> str:
    """A runnable script asserting the ground lemmas of one schema instance."""
    holes = axioms.default_holes(name, n)
    holes_used = axioms.self_holes(name, holes) if self_instance else holes
    lemmas = axioms.instantiate(name, holes_used, cfg.bounds)
    decls = {}
    for t in holes_used:
        for u in subterms(t):
            if isinstance(u, Var):
                decls.setdefault(u.name, f"(declare-const {symbol(u.name)} {print_sort(u.sort)})")
            elif isinstance(u, FunRef):
                params = " ".join(print_sort(s) for s in u.sort.args)
                decls.setdefault(u.name, f"(declare-fun {symbol(u.name)} ({params}) {print_sort(u.sort.ret)})")
    schema = axioms.get_schema(name)
    idx = axioms.index_range(name, cfg.bounds)
    bd = cfg.bounds
    lines = [f"; schema {name}: {schema.doc}", f"; quantified indices expanded over {list(idx)}"]
    lines.append(f"(set-option :profile {schema.profile})")
    for key, value in (("max-len", bd.max_len), ("int-lo", bd.int_lo), ("int-hi", bd.int_hi),
                       ("elem-card", bd.elem_card), ("delta-int", bd.delta_int)):
        lines.append(f"(set-option :{key} {value})")
    lines.append("(declare-sort E 0)")
    lines.extend(decls[k] for k in sorted(decls))
    for lem in lemmas:
        f = b.not_(lem.formula) if negate else lem.formula
        lines.append(f"(assert {print_term(f)})")
    if negate or self_instance:
        lines.append("(check-sat-bounded)")
    return "\n".join(lines)


def cmd_lemmas(name: str, cfg: RunConfig, n: int = 1, self_instance: bool = False, negate: bool = False) -> Report:
    report = Report("lemmas", cfg)
    report.add("lemmas", schema=name, script=lemma_script(name, cfg, n, self_instance, negate))
    return report


# fragment-check


def fragment_record(t: Term) -> dict:
    offenders = reduction.in_fragment(t)
    shifts = reduction.detect_index_shifting(t)
    return {
        "kind": "fragment",
        "term": print_term(t),
        "in_fragment": not offenders,
        "offenders": [str(o) for o in offenders],
        "shifting": [
            {"sequence": print_term(w.sequence), "var": w.var, "offsets": list(w.offsets)} for w in shifts
        ],
    }


def cmd_fragment_check(text: str, cfg: RunConfig, overrides=()) -> Report:
    script = load(text)
    cfg = cfg.with_options(script.options(), overrides)
    report = Report("fragment-check", cfg)
    terms = _terms_of_all(script) + [c.body for c in script.commands if isinstance(c, DefineFun)]
    for t in terms:
        report.records.append(fragment_record(t))
    if any(not r["in_fragment"] or r["shifting"] for r in report.records):
        report.exit_code = EXIT_FRAGMENT
    return report
