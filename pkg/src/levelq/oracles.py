"""Enumeration oracles for the Macaulay calculus.

These avoid binomial arithmetic entirely: they build order ideals of
monomials and count.  Used by the verification suite and the tests.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Sequence


@lru_cache(maxsize=None)
def lex_ascending(nvars: int, deg: int) -> tuple[tuple[int, ...], ...]:
    """Degree-``deg`` exponent vectors in ``nvars`` variables, lex-smallest first."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return tuple(sorted(out))


def _divisors_down(m: tuple[int, ...]):
    for v, x in enumerate(m):
        if x:
            yield m[:v] + (x - 1,) + m[v + 1 :]


def _min_vars(b: int, deg: int) -> int:
    n = 1
    while comb(n + deg - 1, deg) < b:
        n += 1
    return n


@lru_cache(maxsize=None)
def lex_growth(b: int, i: int, nvars: int = 0) -> int:
    """Degree ``i+1`` monomials all of whose degree-``i`` divisors lie among the ``b`` lex-smallest."""
    if b == 0:
        return 0
    n = max(nvars, _min_vars(b, i))
    seg = set(lex_ascending(n, i)[:b])
    return sum(1 for m in lex_ascending(n, i + 1) if all(d in seg for d in _divisors_down(m)))


@lru_cache(maxsize=None)
def _lex_step_ok(nvars: int, i: int, a_i: int, a_next: int) -> bool:
    if a_next == 0:
        return True
    if a_next > len(lex_ascending(nvars, i + 1)) or a_i > len(lex_ascending(nvars, i)):
        return False
    seg = set(lex_ascending(nvars, i)[:a_i])
    return all(all(d in seg for d in _divisors_down(m)) for m in lex_ascending(nvars, i + 1)[:a_next])


def lex_order_ideal_exists(a: Sequence[int]) -> bool:
    """Whether the lex-smallest segments in ``a[1]`` variables form an order ideal with histogram ``a``."""
    if not a or a[0] != 1:
        return False
    if len(a) == 1:
        return True
    n = a[1]
    if n == 0:
        return not any(a[2:])
    return all(_lex_step_ok(n, i, a[i], a[i + 1]) for i in range(1, len(a) - 1))


def order_ideal_exists(a: Sequence[int]) -> bool:
    """Exhaustive search: any order ideal of monomials in ``a[1]`` variables with histogram ``a``.

    Depth-first over degrees; exponential, for small entries only.
    """
    if not a or a[0] != 1:
        return False
    if len(a) == 1:
        return True
    n = a[1]
    if n == 0:
        return not any(a[2:])

    def extend(level: frozenset, i: int) -> bool:
        if i + 1 == len(a):
            return True
        allowed = [m for m in lex_ascending(n, i + 1) if all(d in level for d in _divisors_down(m))]
        if len(allowed) < a[i + 1]:
            return False
        if a[i + 1] == 0:
            return not any(a[i + 1 :])
        return any(extend(frozenset(c), i + 1) for c in itertools.combinations(allowed, a[i + 1]))

    return extend(frozenset(lex_ascending(n, 1)), 1)


def max_growth_exhaustive(b: int, i: int, nvars: int) -> int:
    """Largest count of degree ``i+1`` monomials supported on some ``b`` degree-``i`` monomials."""
    best = 0
    for s in itertools.combinations(lex_ascending(nvars, i), b):
        seg = set(s)
        best = max(best, sum(1 for m in lex_ascending(nvars, i + 1) if all(d in seg for d in _divisors_down(m))))
    return best
