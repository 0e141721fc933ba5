"""Reading and writing sequence scripts in an SMT-LIB 2.6-style syntax."""

from .parser import parse_model, parse_script, parse_sort, parse_term
from .printer import print_command, print_model, print_script, print_sort, print_term, print_value
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
