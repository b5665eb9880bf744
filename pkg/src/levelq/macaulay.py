"""Macaulay representations, M-vectors, sums of M-vectors and module bounds.

Every comparison is exact integer arithmetic; ratios are compared by
cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class MacaulayRep:
    """``b = sum(comb(n_j, j) for n_j, j in terms)`` with strictly decreasing tops."""

    b: int
    i: int
    terms: tuple[tuple[int, int], ...]


def macaulay_rep(b: int, i: int) -> MacaulayRep:
    """The greedy ``i``-binomial expansion of ``b``."""
    if b < 0 or i < 1:
        raise ValidationError(f"need b >= 0 and i >= 1, got ({b}, {i})")
    terms = []
    rest, j = b, i
    while rest > 0 and j >= 1:
        n = j
        while comb(n + 1, j) <= rest:
            n += 1
        terms.append((n, j))
        rest -= comb(n, j)
        j -= 1
    return MacaulayRep(b, i, tuple(terms))


def macaulay_bound(b: int, i: int) -> int:
    """``b^<i>``: shift every binomial of the ``i``-expansion up by one."""
    if b == 0:
        return 0
    return sum(comb(n + 1, j + 1) for n, j in macaulay_rep(b, i).terms)


def _check_nonneg(a: Sequence[int]):
    if any((not isinstance(x, int)) or x < 0 for x in a):
        raise ValidationError(f"expected nonnegative integers, got {list(a)}")


def is_m_vector(a: Sequence[int]) -> tuple[bool, Optional[int]]:
    """Macaulay's criterion; returns ``(ok, index of the first bad entry)``."""
    _check_nonneg(a)
    if not a or a[0] != 1:
        return False, 0
    for i in range(1, len(a) - 1):
        if a[i + 1] > macaulay_bound(a[i], i):
            return False, i + 1
    return True, None


def is_sum_of_m_vectors(a: Sequence[int]) -> bool:
    """Zero, or ``a[0] > 0`` with ``(1, a[1], ...)`` an M-vector."""
    _check_nonneg(a)
    if not any(a):
        return True
    if a[0] == 0:
        return False
    return is_m_vector((1,) + tuple(a[1:]))[0]


def has_internal_zero(a: Sequence[int]) -> bool:
    return any(a[i] > 0 and a[i - 1] == 0 for i in range(1, len(a)))


def module_bound(a_i: int, i: int, s: int) -> int:
    """Largest degree ``i+1`` value after ``a_i`` for a module generated in degree 0.

    Writes ``a_i = q*C(s+i-1, i) + r`` with ``r < C(s+i-1, i)``; the bound is
    ``q*C(s+i, i+1) + r^<i>``.  At ``i = 0`` the divisor is 1, so ``r = 0``.
    """
    q, r = divmod(a_i, comb(s + i - 1, i))
    return q * comb(s + i, i + 1) + (macaulay_bound(r, i) if i >= 1 else 0)


def module_bound_ok(a: Sequence[int], s: int) -> tuple[bool, Optional[int]]:
    """Hilbert function test for modules generated in degree 0 over ``s`` variables."""
    _check_nonneg(a)
    if s < 1:
        raise ValidationError("number of variables s must be >= 1")
    for i in range(len(a) - 1):
        if a[i + 1] > module_bound(a[i], i, s):
            return False, i + 1
    return True, None


def cbar_module_check(cbar: Sequence[int], h1bar: int, d: int) -> tuple[bool, list[int]]:
    """Module bound with ``s = h1bar`` applied to a complementary vector.

    A prefix of the vector is accepted; only the indices present are
    checked.  Returns every violating index (empty when the check passes).
    """
    _check_nonneg(cbar)
    if not cbar or len(cbar) > (d - 1) // 2 + 1:
        raise ValidationError(f"complementary vector for d = {d} has at most {(d - 1) // 2 + 1} entries")
    violations = []
    for i in range(len(cbar) - 1):
        if h1bar < 1 or cbar[i + 1] > module_bound(cbar[i], i, h1bar):
            violations.append(i + 1)
    return not violations, violations


def concavity_checks(h: Sequence[int], d: Optional[int] = None) -> dict[str, bool]:
    """Log-concavity, and log-concavity after dividing ``h_i`` by ``C(d, i)``."""
    _check_nonneg(h)
    if d is None:
        d = len(h) - 1
    if len(h) > d + 1:
        raise ValidationError(f"sequence longer than d + 1 = {d + 1}")
    log_concave = all(h[i] ** 2 >= h[i - 1] * h[i + 1] for i in range(1, len(h) - 1))
    ultra = all(
        h[i] ** 2 * comb(d, i - 1) * comb(d, i + 1) >= h[i - 1] * h[i + 1] * comb(d, i) ** 2
        for i in range(1, len(h) - 1)
    )
    return {"log_concave": log_concave, "ultra_log_concave": ultra}


def at_chain_check(h: Sequence[int]) -> tuple[bool, Optional[int]]:
    """``h0/hd <= h1/h(d-1) <= ... <= hd/h0``; returns the first failing step ``i -> i+1``."""
    _check_nonneg(h)
    if any(x == 0 for x in h):
        raise ValidationError("ratio chain needs all entries positive")
    d = len(h) - 1
    for i in range(d):
        if h[i] * h[d - i - 1] > h[i + 1] * h[d - i]:
            return False, i
    return True, None


def complementary(seq: Sequence[int]) -> tuple[int, ...]:
    """``(a_d - a_0, a_{d-1} - a_1, ...)`` up to index ``(d-1)//2``."""
    d = len(seq) - 1
    return tuple(seq[d - q] - seq[q] for q in range((d - 1) // 2 + 1))
