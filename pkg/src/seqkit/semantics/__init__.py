"""Values, per-family operations and the profile-parameterized evaluator."""

from ..core.signature import Profile
from .evaluator import Evaluator, FunDef, evaluate, require_profile
from .values import Default, Elem, FnTable, TokenKey, Unspecified, show
