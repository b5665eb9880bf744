"""Matroids given by their bases: exchange axiom, independence complexes, h-vector search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from . import scomplex
from .errors import ValidationError
from .scomplex import SimplicialComplex

SEARCH_LIMIT = 20


def is_basis_family(n: int, r: int, bases: Iterable[Iterable[int]]) -> bool:
    """Nonempty family of r-subsets of 1..n satisfying basis exchange."""
    fam = {frozenset(b) for b in bases}
    if not fam:
        return False
    if any(len(b) != r or not b <= set(range(1, n + 1)) for b in fam):
        return False
    for b1 in fam:
        for b2 in fam:
            for e in b1 - b2:
                rest = b1 - {e}
                if not any(rest | {f} in fam for f in b2 - b1):
                    return False
    return True


@dataclass(frozen=True)
class Matroid:
    n: int
    r: int
    bases: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_basis_family(self.n, self.r, self.bases):
            raise ValidationError("bases violate the exchange axiom (or are empty / mis-sized)")

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "bases": [list(b) for b in self.bases]}


def make(n: int, r: int, bases: Iterable[Iterable[int]]) -> Matroid:
    return Matroid(n, r, tuple(sorted(tuple(sorted(b)) for b in bases)))


def from_json(data: dict) -> Matroid:
    return make(int(data["n"]), int(data["r"]), data["bases"])


def uniform(r: int, n: int) -> Matroid:
    return make(n, r, itertools.combinations(range(1, n + 1), r))


def independence_complex(m: Matroid) -> SimplicialComplex:
    """Subsets of bases, on the elements that are not loops (relabeled in order)."""
    if m.r == 0:
        raise ValidationError("rank-0 matroid has an empty independence complex")
    return scomplex.relabeled(m.bases)


def independence_h(m: Matroid) -> tuple[tuple[int, ...], SimplicialComplex]:
    cx = independence_complex(m)
    return scomplex.h_vector(cx), cx


def coloops(m: Matroid) -> set[int]:
    common = set(m.bases[0])
    for b in m.bases[1:]:
        common &= set(b)
    return common


def is_coloop_free(m: Matroid) -> bool:
    return not coloops(m)


def search_h(n: int, r: int, target_h: Sequence[int]) -> Optional[Matroid]:
    """Lexicographically first coloop-free matroid whose independence complex has h-vector ``target_h``.

    The number of bases equals the sum of the h-vector, so only families of
    that size are scanned; families are visited in lexicographic order.
    """
    pool = list(itertools.combinations(range(1, n + 1), r))
    if len(pool) > SEARCH_LIMIT:
        raise ValidationError(f"C({n},{r}) = {len(pool)} candidate bases exceeds the limit {SEARCH_LIMIT}")
    target = tuple(target_h)
    if len(target) != r + 1:
        raise ValidationError(f"target h-vector must have r + 1 = {r + 1} entries")
    size = sum(target)
    if size < 1 or size > len(pool):
        return None
    for fam in itertools.combinations(pool, size):
        if not is_basis_family(n, r, fam):
            continue
        m = Matroid(n, r, fam)
        if not is_coloop_free(m):
            continue
        if independence_h(m)[0] == target:
            return m
    return None


def uniform_h_closed_form(r: int, n: int) -> tuple[int, ...]:
    return tuple(comb(n - r + i - 1, i) for i in range(r + 1))
