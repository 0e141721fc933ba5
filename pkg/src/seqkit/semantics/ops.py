"""Total semantics of each symbol family on grounded values.

Every function here is pure.  Partial reads return ``Unspecified`` (under
the underspecified profiles) or ``Default`` (under ArrayC); callers that need
a grounded value pass a ``resolve`` hook.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

from ..core.signature import Profile
from ..core.sorts import Sort
from ..errors import ArityMismatch, ProfileViolation
from .values import Default, TokenKey, Unspecified, Value

UNDERSPECIFIED = frozenset({Profile.PROPOSAL, Profile.CVC5, Profile.Z3})


def _identity(v):
    return v


def in_bounds(s: Sequence, i: int) -> bool:
    return 0 <= i < len(s)


# access: get / at / len


def eval_get(s: tuple, i: int, profile: Profile, elem_sort: Sort, symbol: str = "seq.get") -> Value:
    if in_bounds(s, i):
        return s[i]
    if profile is Profile.ARRAYC:
        return Default(elem_sort)
    return Unspecified(TokenKey(symbol, (s, i), elem_sort))


def eval_at(s: tuple, i: int) -> tuple:
    return (s[i],) if in_bounds(s, i) else ()


def eval_access(family: str, args, profile: Profile = Profile.PROPOSAL, elem_sort: Sort | None = None):
    if family == "get":
        return eval_get(args[0], args[1], profile, elem_sort)
    if family == "at":
        return eval_at(*args)
    if family == "len":
        return len(args[0])
    raise ValueError(f"unknown access family {family}")


def eval_nth_prime(s: tuple, i: int, d: Value) -> Value:
    """Access with a caller-supplied fallback."""
    return s[i] if in_bounds(s, i) else d


# construction / single writes


def eval_set(s: tuple, i: int, v) -> tuple:
    if not in_bounds(s, i):
        return s
    return s[:i] + (v,) + s[i + 1:]


def eval_const(n: int, v) -> tuple:
    return (v,) * n if n > 0 else ()


def eval_concat(ss: Sequence[tuple]) -> tuple:
    out: tuple = ()
    for s in ss:
        out += s
    return out


# slices


def slice_inclusive(s: tuple, a: int, b: int) -> tuple:
    """Positions max(a, 0) .. min(b, len-1), both ends included."""
    if a > b:
        return ()
    lo, hi = max(a, 0), min(b, len(s) - 1)
    return s[lo:hi + 1] if lo <= hi else ()


def slice_exclusive(s: tuple, a: int, b: int) -> tuple:
    """Positions max(a, 0) .. min(b, len) - 1."""
    lo, hi = max(a, 0), min(b, len(s))
    return s[lo:hi] if lo < hi else ()


def extract(s: tuple, i: int, n: int) -> tuple:
    """Start index plus length; empty unless i is in bounds and n positive."""
    if in_bounds(s, i) and n > 0:
        return s[i:min(i + n, len(s))]
    return ()


def eval_slice(s: tuple, a: int, b: int, profile: Profile = Profile.PROPOSAL) -> tuple:
    if profile in (Profile.CVC5, Profile.Z3):
        return extract(s, a, b)
    return slice_inclusive(s, a, b)


# update


def eval_update(s1: tuple, i: int, s2: tuple, profile: Profile = Profile.PROPOSAL) -> tuple:
    if profile is Profile.CVC5:
        if not in_bounds(s1, i):
            return s1
    elif profile is not Profile.PROPOSAL:
        raise ProfileViolation(f"seq.update is not available under {profile}")
    end = i + len(s2)
    return tuple(s2[j - i] if i <= j < end else x for j, x in enumerate(s1))


# string-like family


def occurrences(s: tuple, pat: tuple, start: int = 0):
    for p in range(max(start, 0), len(s) - len(pat) + 1):
        if s[p:p + len(pat)] == pat:
            yield p


def eval_contains(s1: tuple, s2: tuple) -> bool:
    """True iff s1 occurs as a contiguous factor of s2."""
    return next(occurrences(s2, s1), None) is not None


def eval_indexof(s: tuple, pat: tuple, i: int = 0) -> int:
    start = max(i, 0)
    if not pat:
        return start if start <= len(s) else -1
    return next(occurrences(s, pat, start), -1)


def eval_replace(s: tuple, pat: tuple, rep: tuple) -> tuple:
    p = next(occurrences(s, pat), None)
    if p is None:
        return s
    return s[:p] + rep + s[p + len(pat):]


def eval_replace_all(s: tuple, pat: tuple, rep: tuple) -> tuple:
    if not pat:
        return s
    out: tuple = ()
    p = 0
    while p < len(s):
        if s[p:p + len(pat)] == pat:
            out += rep
            p += len(pat)
        else:
            out += (s[p],)
            p += 1
    return out


def eval_prefixof(pre: tuple, s: tuple) -> bool:
    return s[:len(pre)] == pre


def eval_suffixof(suf: tuple, s: tuple) -> bool:
    return len(suf) <= len(s) and s[len(s) - len(suf):] == suf


def eval_rev(s: tuple) -> tuple:
    return s[::-1]


_STRINGLIKE = {
    "contains": eval_contains,
    "indexof": eval_indexof,
    "replace": eval_replace,
    "replace_all": eval_replace_all,
    "prefixof": eval_prefixof,
    "suffixof": eval_suffixof,
    "rev": eval_rev,
}


def eval_stringlike(family: str, args, profile: Profile = Profile.PROPOSAL):
    if family in ("replace_all", "rev") and profile not in (Profile.PROPOSAL, Profile.CVC5):
        raise ProfileViolation(f"seq.{family} is not available under {profile}")
    if profile is Profile.ARRAYC:
        raise ProfileViolation(f"seq.{family} is not available under {profile}")
    return _STRINGLIKE[family](*args)


# higher-order family


def eval_map(f: Callable, ss: Sequence[tuple], profile: Profile = Profile.PROPOSAL) -> tuple:
    if not ss:
        raise ArityMismatch("map needs at least one sequence")
    if profile is Profile.Z3 and len(ss) != 1:
        raise ProfileViolation("z3 map is unary")
    if profile is Profile.CVC5:
        raise ProfileViolation(f"seq.map is not available under {profile}")
    k = min(len(s) for s in ss)
    return tuple(f(*(s[t] for s in ss)) for t in range(k))


def eval_mapi(
    f: Callable,
    o: int,
    ss: Sequence[tuple],
    profile: Profile = Profile.PROPOSAL,
    elem_sorts: Sequence[Sort] | None = None,
    resolve: Callable = _identity,
) -> tuple:
    """Apply f(index, x1..xn) from offset ``o`` up to the shortest length.

    A negative offset reads positions outside the inputs; those reads follow
    the profile's ``get`` semantics and go through ``resolve``.
    """
    if not ss:
        raise ArityMismatch("mapi needs at least one sequence")
    if profile is Profile.Z3 and len(ss) != 1:
        raise ProfileViolation("z3 mapi is unary")
    if profile not in (Profile.PROPOSAL, Profile.Z3):
        raise ProfileViolation(f"seq.mapi is not available under {profile}")
    k = min(len(s) for s in ss)
    if o >= k:
        return ()
    sorts = elem_sorts or [None] * len(ss)
    out = []
    for t in range(k - o):
        pos = o + t
        xs = [resolve(eval_get(s, pos, profile, es)) for s, es in zip(ss, sorts)]
        out.append(f(pos, *xs))
    return tuple(out)


def eval_fold(family: str, f: Callable, o: int | None, b, s: tuple, profile: Profile = Profile.PROPOSAL):
    if profile not in (Profile.PROPOSAL, Profile.Z3):
        raise ProfileViolation(f"seq.{family} is not available under {profile}")
    acc = b
    if family == "fold_left":
        for x in s:
            acc = f(acc, x)
    elif family == "fold_lefti":
        for t, x in enumerate(s):
            acc = f(o + t, acc, x)
    else:
        raise ValueError(f"unknown fold family {family}")
    return acc
