"""Signature table: every theory symbol, its schematic sort and its profiles."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .sorts import BOOL, INT, FnSort, SeqSort, Sort, SortVar


class Profile(enum.Enum):
    """Which total semantics the evaluator gives each symbol."""

    PROPOSAL = "proposal"
    CVC5 = "cvc5"
    Z3 = "z3"
    ARRAYC = "arrayc"

    @classmethod
    def parse(cls, text: str) -> "Profile":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown profile {text!r} (one of {names})") from None

    def __str__(self) -> str:
        return self.value


P, C, Z, R = Profile.PROPOSAL, Profile.CVC5, Profile.Z3, Profile.ARRAYC
ALL = frozenset(Profile)

A = SortVar("A")
B = SortVar("B")
SA = SeqSort(A)


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    arg_sorts: tuple[Sort, ...]
    ret_sort: Sort
    profiles: frozenset[Profile]
    variadic: bool = False
    # arity checking for map/mapi/fold/indexof is not expressible by a plain
    # schematic row; sort_of special-cases these
    special: bool = False
    needs_annotation: bool = False

    def available(self, profile: Profile) -> bool:
        return profile in self.profiles


def _decl(name, args, ret, profiles, **kw):
    return SymbolDecl(name, tuple(args), ret, frozenset(profiles), **kw)


_FN_STUB = FnSort((A,), B)

_TABLE = [
    _decl("seq.empty", [], SA, ALL, needs_annotation=True),
    _decl("seq.const", [INT, A], SA, {P, R}),
    _decl("seq.unit", [A], SA, ALL),
    _decl("seq.len", [SA], INT, ALL),
    _decl("seq.get", [SA, INT], A, ALL),
    _decl("seq.set", [SA, INT, A], SA, {P, R}),
    _decl("seq.slice", [SA, INT, INT], SA, ALL),
    _decl("seq.concat", [SA], SA, ALL, variadic=True),
    _decl("seq.at", [SA, INT], SA, ALL),
    _decl("seq.contains", [SA, SA], BOOL, {P, C, Z}),
    _decl("seq.replace", [SA, SA, SA], SA, {P, C, Z}),
    _decl("seq.indexof", [SA, SA, INT], INT, {P, C, Z}, special=True),
    _decl("seq.prefixof", [SA, SA], BOOL, {P, C, Z}),
    _decl("seq.suffixof", [SA, SA], BOOL, {P, C, Z}),
    _decl("seq.replace_all", [SA, SA, SA], SA, {P, C}),
    _decl("seq.rev", [SA], SA, {P, C}),
    _decl("seq.update", [SA, INT, SA], SA, {P, C}),
    _decl("seq.map", [_FN_STUB, SA], SeqSort(B), {P, Z, R}, variadic=True, special=True),
    _decl("seq.mapi", [_FN_STUB, INT, SA], SeqSort(B), {P, Z}, variadic=True, special=True),
    _decl("seq.fold_left", [_FN_STUB, B, SA], B, {P, Z}, special=True),
    _decl("seq.fold_lefti", [_FN_STUB, INT, B, SA], B, {P, Z}, special=True),
    # default-argument access: in bounds -> element, otherwise the third argument
    _decl("seq.get_default", [SA, INT, A], A, ALL),
    # Array_c vocabulary, the reduction target
    _decl("arrc.length", [SA], INT, {R}),
    _decl("arrc.nth", [SA, INT], A, {R}),
    _decl("arrc.repeat", [A, INT], SA, {R}),
    _decl("arrc.app", [SA, SA], SA, {R}),
    _decl("arrc.slice", [SA, INT, INT], SA, {R}),
    _decl("arrc.map", [_FN_STUB, SA], SeqSort(B), {R}, variadic=True, special=True),
    _decl("arrc.update", [INT, SA, A], SA, {R}),
    _decl("arrc.default", [], A, ALL, needs_annotation=True),
]

SIGNATURE: dict[str, SymbolDecl] = {}
for _d in _TABLE:
    if _d.name in SIGNATURE:
        raise RuntimeError(f"duplicate signature row {_d.name}")
    SIGNATURE[_d.name] = _d

# Symbols of the proposed theory, in table order.
PROPOSED_SYMBOLS = (
    "seq.empty", "seq.const", "seq.unit", "seq.len", "seq.get", "seq.set",
    "seq.slice", "seq.concat", "seq.at", "seq.contains", "seq.replace",
    "seq.indexof", "seq.prefixof", "seq.suffixof", "seq.replace_all", "seq.rev",
    "seq.update", "seq.map", "seq.mapi", "seq.fold_left", "seq.fold_lefti",
)
ARRAYC_SYMBOLS = (
    "arrc.length", "arrc.nth", "arrc.repeat", "arrc.app", "arrc.slice",
    "arrc.map", "arrc.update",
)
# Fragment reducible to the Array_c vocabulary.
FRAGMENT_SYMBOLS = frozenset({
    "seq.empty", "seq.const", "seq.unit", "seq.len", "seq.at", "seq.get",
    "seq.set", "seq.slice", "seq.concat", "seq.update", "seq.map",
})

BOOL_OPS = frozenset({"and", "or", "not", "=>"})
INT_OPS = frozenset({"+", "-", "*"})
CMP_OPS = frozenset({"<=", "<", ">=", ">"})
BUILTINS = BOOL_OPS | INT_OPS | CMP_OPS | {"=", "distinct", "ite"}


def lookup(name: str) -> SymbolDecl | None:
    return SIGNATURE.get(name)


def is_theory_symbol(name: str) -> bool:
    return name in SIGNATURE


def is_sequence_symbol(name: str) -> bool:
    return name.startswith("seq.") or name.startswith("arrc.")
