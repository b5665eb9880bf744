"""Simplicial chain complexes over GF(p): reduced Betti numbers and top cycles.

Orientation: a face is its sorted vertex tuple and the boundary deletes the
``i``-th vertex with sign ``(-1)**i``.  Reduced homology uses the
augmentation from vertices to the empty face.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import ff
from .errors import ValidationError
from .scomplex import Face, SimplicialComplex, faces_by_size


@dataclass(frozen=True)
class Cycle:
    """A top-dimensional cycle: one GF(p) coefficient per size-d face."""

    complex: SimplicialComplex
    p: int
    coeffs: tuple[int, ...]

    @property
    def facets(self) -> tuple[Face, ...]:
        return self.complex.faces(self.complex.d)

    def support(self) -> tuple[Face, ...]:
        return tuple(f for f, c in zip(self.facets, self.coeffs) if c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": [[list(f), int(c)] for f, c in zip(self.facets, self.coeffs)]}


def cycle_from_json(cx: SimplicialComplex, data: dict) -> Cycle:
    p = int(data["p"])
    lookup = {tuple(sorted(f)): int(c) % p for f, c in data["coeffs"]}
    facets = cx.faces(cx.d)
    unknown = set(lookup) - set(facets)
    if unknown:
        raise ValidationError(f"cycle mentions {sorted(unknown)[0]}, not a face of size {cx.d}")
    return Cycle(cx, p, tuple(lookup.get(f, 0) for f in facets))


def boundary_matrix(field: ff.Field, faces: Sequence[Face], subfaces: Sequence[Face]) -> np.ndarray:
    """Matrix of the boundary from ``faces`` (columns) to ``subfaces`` (rows)."""
    row = {f: i for i, f in enumerate(subfaces)}
    mat = field.zeros((len(subfaces), len(faces)))
    minus_one = field.p - 1
    for j, f in enumerate(faces):
        for i in range(len(f)):
            mat[row[f[:i] + f[i + 1 :]], j] = 1 if i % 2 == 0 else minus_one
    return mat


def _boundary_ranks(field, layers) -> list[int]:
    # ranks[k] = rank of the boundary from size-k faces to size-(k-1) faces
    ranks = [0]
    for k in range(1, len(layers)):
        if not layers[k]:
            ranks.append(0)
            continue
        ranks.append(ff.rank(field, boundary_matrix(field, layers[k], layers[k - 1])))
    ranks.append(0)
    return ranks


def reduced_betti_of_layers(layers, p: int) -> list[int]:
    """``[beta_-1, beta_0, ..., beta_top]`` for faces grouped by size."""
    field = ff.field_create(p, 1)
    ranks = _boundary_ranks(field, layers)
    return [len(layers[k]) - ranks[k] - ranks[k + 1] for k in range(len(layers))]


def betti(cx: SimplicialComplex, p: int = 2) -> tuple[int, ...]:
    """Reduced Betti numbers ``(beta_0, ..., beta_{d-1})`` over GF(p)."""
    return tuple(reduced_betti_of_layers(cx.faces_by_size, p)[1:])


def top_cycle_basis(cx: SimplicialComplex, p: int = 2) -> list[Cycle]:
    """Basis of the top reduced homology (the cycle space, as nothing lies above it).

    The free coordinates of the echelon basis are taken among the
    lexicographically earliest faces.
    """
    field = ff.field_create(p, 1)
    top = cx.faces(cx.d)
    bd = boundary_matrix(field, top, cx.faces(cx.d - 1))
    ker = ff.kernel_basis(field, bd[:, ::-1])[::-1, :]
    if ker.shape[1] == 0:
        raise ValidationError(f"beta_{cx.d - 1} vanishes: no top-dimensional cycle over GF({p})")
    cycles = [Cycle(cx, p, tuple(int(c) for c in ker[:, k])) for k in range(ker.shape[1])]
    return cycles[::-1]


def is_cycle(c: Cycle) -> bool:
    field = ff.field_create(c.p, 1)
    cx = c.complex
    bd = boundary_matrix(field, cx.faces(cx.d), cx.faces(cx.d - 1))
    return not np.any(field.matmul(bd, np.array(c.coeffs, dtype=np.int64)[:, None]))


# ---------------------------------------------------------------------------
# Cohen-Macaulay tests via Reisner's criterion


def _all_faces(layers) -> list[Face]:
    return [f for layer in layers for f in layer]


def _links_acyclic(faces: list[Face], p: int) -> bool:
    face_sets = [(f, frozenset(f)) for f in faces]
    for sigma, sset in face_sets:
        link = [tuple(v for v in g if v not in sset) for g, gset in face_sets if sset <= gset]
        layers = faces_by_size(link)
        dim_link = len(layers) - 2
        betti_link = reduced_betti_of_layers(layers, p)
        # betti_link[i + 1] is the reduced beta_i
        if any(betti_link[i + 1] for i in range(-1, dim_link)):
            return False
    return True


def is_cm(cx: SimplicialComplex, p: int = 2) -> bool:
    """Reisner: every link has vanishing reduced homology below its dimension."""
    return _links_acyclic(_all_faces(cx.faces_by_size), p)


def is_doubly_cm(cx: SimplicialComplex, p: int = 2) -> bool:
    if not is_cm(cx, p):
        return False
    faces = _all_faces(cx.faces_by_size)
    for v in range(1, cx.n + 1):
        deletion = [f for f in faces if v not in f]
        if max(len(f) for f in deletion) != cx.d:
            return False
        if not _links_acyclic(deletion, p):
            return False
    return True


def reduced_euler_characteristic(cx: SimplicialComplex) -> int:
    return sum((-1) ** (k - 1) * len(layer) for k, layer in enumerate(cx.faces_by_size))
