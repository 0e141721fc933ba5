"""Sorts, signature and terms of the sequence theory."""

from .check import sort_of
from .signature import (
    ARRAYC_SYMBOLS,
    BUILTINS,
    FRAGMENT_SYMBOLS,
    PROPOSED_SYMBOLS,
    SIGNATURE,
    Profile,
    SymbolDecl,
)
from .sorts import BOOL, INT, BoolSort, ElemSort, FnSort, IntSort, SeqSort, Sort
from .terms import (
    App,
    BoolLit,
    Call,
    ElemLit,
    Forall,
    FunRef,
    IntLit,
    Let,
    Term,
    Var,
    free_funs,
    free_vars,
    fresh_name,
    subterms,
    substitute,
)
