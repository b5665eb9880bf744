"""Simplicial complexes, f- and h-vectors, and the gluing constructions.

Vertices are labeled ``1..n``; faces are sorted tuples.  Sequences such as
f, h, h-bar are plain tuples of ints; ``f[0]`` is the count of the empty
face.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .errors import InconsistencyError, ValidationError

Face = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[Face, ...]

    @cached_property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def d(self) -> int:
        return self.dim + 1

    @cached_property
    def faces_by_size(self) -> tuple[tuple[Face, ...], ...]:
        """``faces_by_size[k]`` lists the faces with ``k`` vertices, lexicographically."""
        return faces_by_size(self.facets, self.d)

    def faces(self, size: int) -> tuple[Face, ...]:
        if size < 0 or size > self.d:
            return ()
        return self.faces_by_size[size]

    @cached_property
    def face_set(self) -> frozenset[Face]:
        return frozenset(f for layer in self.faces_by_size for f in layer)

    def is_face(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(set(vertices))) in self.face_set

    @cached_property
    def top_facets(self) -> tuple[Face, ...]:
        """Facets of the maximal size ``d``."""
        return tuple(f for f in self.facets if len(f) == self.d)

    @cached_property
    def is_pure(self) -> bool:
        return all(len(f) == self.d for f in self.facets)

    def to_json(self) -> dict:
        return {"vertices": self.n, "facets": [list(f) for f in self.facets]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def faces_by_size(facets: Iterable[Sequence[int]], d: int | None = None):
    facets = [tuple(f) for f in facets]
    if d is None:
        d = max((len(f) for f in facets), default=0)
    layers: list[set] = [set() for _ in range(d + 1)]
    for f in facets:
        for k in range(len(f) + 1):
            layers[k].update(itertools.combinations(f, k))
    return tuple(tuple(sorted(layer)) for layer in layers)


def maximal_faces(faces: Iterable[Sequence[int]]) -> tuple[Face, ...]:
    """Drop duplicates and faces contained in other faces."""
    uniq = sorted({tuple(sorted(set(f))) for f in faces}, key=lambda f: (-len(f), f))
    kept: list[Face] = []
    for f in uniq:
        fs = set(f)
        if not any(fs <= set(g) for g in kept):
            kept.append(f)
    return tuple(sorted(kept))


def validate(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Canonical complex on ``1..n`` from a list of vertex sets."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"vertex count must be a positive integer, got {n!r}")
    raw = [list(f) for f in facets]
    if not raw:
        raise ValidationError("empty facet list")
    for f in raw:
        if not f:
            raise ValidationError("empty facet")
        for v in f:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise ValidationError(f"vertex label {v!r} outside 1..{n}")
    kept = maximal_faces(raw)
    used = {v for f in kept for v in f}
    missing = sorted(set(range(1, n + 1)) - used)
    if missing:
        raise ValidationError(f"vertex {missing[0]} lies in no facet")
    return SimplicialComplex(n, kept)


def from_json(data: dict) -> SimplicialComplex:
    try:
        return validate(data["vertices"], data["facets"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed complex JSON: {exc}") from None


def relabeled(facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Complex on the vertices actually used, relabeled ``1..n`` in order."""
    facets = [tuple(f) for f in facets]
    verts = sorted({v for f in facets for v in f})
    pos = {v: i + 1 for i, v in enumerate(verts)}
    return validate(len(verts), [[pos[v] for v in f] for f in facets])


# ---------------------------------------------------------------------------
# face counts


def f_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    return tuple(len(layer) for layer in cx.faces_by_size)


def h_from_f(f: Sequence[int], d: int) -> tuple[int, ...]:
    return tuple(
        sum((-1) ** (j - i) * comb(d - i, j - i) * f[i] for i in range(j + 1))
        for j in range(d + 1)
    )


def f_and_h(cx: SimplicialComplex) -> tuple[tuple[int, ...], tuple[int, ...]]:
    f = f_vector(cx)
    return f, h_from_f(f, cx.d)


def h_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    return f_and_h(cx)[1]


def g_from_h(h: Sequence[int]) -> tuple[int, ...]:
    """First differences of the lower half: ``(h0, h1-h0, ..., h_{d//2} - h_{d//2-1})``."""
    d = len(h) - 1
    return tuple(h[0] if q == 0 else h[q] - h[q - 1] for q in range(d // 2 + 1))


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


# ---------------------------------------------------------------------------
# generators


def simplex(k: int) -> SimplicialComplex:
    """The solid ``k``-simplex on ``k+1`` vertices."""
    if k < 0:
        raise ValidationError("simplex dimension must be >= 0")
    return validate(k + 1, [list(range(1, k + 2))])


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the ``k``-simplex: all ``k``-subsets of ``1..k+1``."""
    if k < 1:
        raise ValidationError("simplex-boundary needs k >= 1")
    return validate(k + 1, itertools.combinations(range(1, k + 2), k))


def cross_polytope_boundary(m: int) -> SimplicialComplex:
    """Boundary of the ``m``-dimensional cross-polytope; ``2i-1, 2i`` are antipodal."""
    if m < 1:
        raise ValidationError("cross-polytope-boundary needs m >= 1")
    pairs = [(2 * i + 1, 2 * i + 2) for i in range(m)]
    return validate(2 * m, itertools.product(*pairs))


def cyclic_polytope_boundary(m: int, n: int) -> SimplicialComplex:
    """Boundary of the cyclic ``m``-polytope on ``n`` vertices (Gale evenness)."""
    if m < 2 or n < m + 1:
        raise ValidationError(f"cyclic-polytope-boundary needs m >= 2 and n >= m+1, got ({m}, {n})")
    facets = []
    for s in itertools.combinations(range(1, n + 1), m):
        ss = set(s)
        outside = [v for v in range(1, n + 1) if v not in ss]
        if all(
            sum(1 for v in s if i < v < j) % 2 == 0 for i, j in itertools.combinations(outside, 2)
        ):
            facets.append(s)
    return validate(n, facets)


def discrete(m: int) -> SimplicialComplex:
    if m < 1:
        raise ValidationError("discrete needs m >= 1")
    return validate(m, [[v] for v in range(1, m + 1)])


def square_boundary() -> SimplicialComplex:
    return validate(4, [[1, 2], [2, 3], [3, 4], [1, 4]])


def theta_graph() -> SimplicialComplex:
    """Three paths of length two joining vertices 2 and 4 (through 1, 3 and 5)."""
    return validate(5, [[1, 2], [2, 3], [3, 4], [1, 4], [4, 5], [2, 5]])


def square_with_diagonal() -> SimplicialComplex:
    return validate(4, [[1, 2], [2, 3], [3, 4], [1, 4], [2, 4]])


def generator(kind: str, *params: int) -> SimplicialComplex:
    table = {
        "theta-graph": theta_graph,
        "square-with-diagonal": square_with_diagonal,
        "simplex-boundary": simplex_boundary,
        "cross-polytope-boundary": cross_polytope_boundary,
        "cyclic-polytope-boundary": cyclic_polytope_boundary,
        "discrete": discrete,
        "square-boundary": square_boundary,
        "simplex": simplex,
    }
    if kind not in table:
        raise ValidationError(f"unknown generator {kind!r}; choose from {sorted(table)}")
    try:
        return table[kind](*params)
    except TypeError:
        raise ValidationError(f"wrong parameters {params} for generator {kind!r}") from None


# ---------------------------------------------------------------------------
# constructions


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Join; ``b``'s labels are shifted up by ``a.n``."""
    facets = [fa + tuple(v + a.n for v in fb) for fa in a.facets for fb in b.facets]
    return validate(a.n + b.n, facets)


def disjoint_union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    return validate(a.n + b.n, list(a.facets) + [tuple(v + a.n for v in f) for f in b.facets])


def stacked_attach(cx: SimplicialComplex, facet: Sequence[int], copies: int) -> SimplicialComplex:
    """Glue ``copies`` cones over the boundary of ``facet``, each with a fresh apex.

    Each copy adds one vertex and adds ``(0, 1, ..., 1)`` to the h-vector.
    """
    facet = tuple(sorted(facet))
    if facet not in cx.facets or len(facet) != cx.d:
        raise ValidationError(f"{list(facet)} is not a facet of size {cx.d}")
    if copies < 0:
        raise ValidationError("copies must be >= 0")
    new = list(cx.facets)
    for c in range(copies):
        apex = cx.n + c + 1
        for v in facet:
            new.append(tuple(u for u in facet if u != v) + (apex,))
    return validate(cx.n + copies, new)


def chari_h(h_sigma1: Sequence[int], ear_ball_hs: Sequence[Sequence[int]], d: int) -> tuple[int, ...]:
    """h-polynomial of an ear decomposition: ``h(S1;t) + sum_q t^d h(B_q; 1/t)``."""
    if len(h_sigma1) > d + 1 or any(len(b) > d + 1 for b in ear_ball_hs):
        raise ValidationError(f"h-vectors must have at most {d + 1} entries")
    out = list(h_sigma1) + [0] * (d + 1 - len(h_sigma1))
    for hb in ear_ball_hs:
        for i, c in enumerate(hb):
            out[d - i] += c
    if any(c < 0 for c in out):
        raise InconsistencyError(f"negative h-vector entry in {out}: invalid ear data")
    return tuple(out)


def construct_from_sum_of_m(a: Sequence[int], q: SimplicialComplex) -> SimplicialComplex:
    """Complex whose complementary vector is ``a``.

    ``q`` is a polytope boundary of dimension ``d-2`` whose g-vector is
    ``(1, a[1], ...)``.  The result is ``q * discrete(3)`` with ``a[0]-1``
    stacked cones attached to its first facet; for ``a == 0`` it is the
    boundary of the ``d``-simplex.
    """
    from .macaulay import is_sum_of_m_vectors

    a = tuple(a)
    d = q.d + 1
    if len(a) != (d - 1) // 2 + 1:
        raise ValidationError(f"vector {list(a)} must have {(d - 1) // 2 + 1} entries for d = {d}")
    if any(x < 0 for x in a) or not is_sum_of_m_vectors(a):
        raise ValidationError(f"{list(a)} is not a sum of M-vectors")
    if not any(a):
        return simplex_boundary(d)
    target = (1,) + a[1:]
    g = g_from_h(h_vector(q))
    if g != target:
        raise ValidationError(f"g-vector of the base complex is {list(g)}, need {list(target)}")
    base = join(q, discrete(3))
    return stacked_attach(base, base.top_facets[0], a[0] - 1)


def construction_ears(a: Sequence[int], q: SimplicialComplex) -> tuple[tuple[int, ...], list[tuple[int, ...]], int]:
    """Ear data ``(h(S1), [h(B_2), ...], d)`` of :func:`construct_from_sum_of_m`'s output."""
    d = q.d + 1
    hq = h_vector(q)
    ears = [hq] + [(1,) * d] * (a[0] - 1)
    return poly_mul(hq, (1, 1)), ears, d


def is_cm(cx: SimplicialComplex, p: int = 2) -> bool:
    """Cohen-Macaulay over GF(p) (Reisner's criterion)."""
    from .homology import is_cm as _is_cm

    return _is_cm(cx, p)


def is_doubly_cm(cx: SimplicialComplex, p: int = 2) -> bool:
    """CM, and every vertex deletion is CM of the same dimension."""
    from .homology import is_doubly_cm as _is_doubly_cm

    return _is_doubly_cm(cx, p)
