"""Artinian monomial algebras: Hilbert functions, socles, Gorenstein quotients, pure O-sequences.

Monomials are exponent vectors (tuples of length ``nvars``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from . import ff, macaulay
from .errors import ValidationError

Exp = tuple[int, ...]

EXHAUSTIVE_LIMIT = 10**6
SCAN_LIMIT = 22


def monomials_of_degree(nvars: int, deg: int) -> list[Exp]:
    """Exponent vectors of total degree ``deg``, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialAlgebra:
    """``k[x_1..x_n] / I`` with ``I`` generated by ``gens``."""

    nvars: int
    gens: tuple[Exp, ...]

    def __post_init__(self):
        if self.nvars < 1:
            raise ValidationError("need at least one variable")
        for g in self.gens:
            if len(g) != self.nvars or any(x < 0 for x in g):
                raise ValidationError(f"generator {list(g)} is not an exponent vector in {self.nvars} variables")

    def is_standard(self, m: Exp) -> bool:
        return not any(divides(g, m) for g in self.gens)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "gens": [list(g) for g in self.gens]}


def from_json(data: dict) -> MonomialAlgebra:
    alg = MonomialAlgebra(int(data["nvars"]), tuple(tuple(int(x) for x in g) for g in data["gens"]))
    if data.get("truncate") is not None:
        alg = truncate(alg, int(data["truncate"]))
    return alg


def _degree_cap(a: MonomialAlgebra) -> int:
    powers = []
    for v in range(a.nvars):
        pure = [g[v] for g in a.gens if sum(g) == g[v] and g[v] > 0]
        if not pure:
            raise ValidationError(
                f"variable {v + 1} has no pure power in the ideal: infinite-dimensional, truncate first"
            )
        powers.append(min(pure))
    return sum(p - 1 for p in powers)


def standard_monomials(a: MonomialAlgebra) -> list[list[Exp]]:
    """Standard monomials grouped by degree, up to the socle degree."""
    cap = _degree_cap(a)
    out = []
    for deg in range(cap + 1):
        layer = [m for m in monomials_of_degree(a.nvars, deg) if a.is_standard(m)]
        if not layer:
            break
        out.append(layer)
    return out


def hilbert(a: MonomialAlgebra) -> tuple[int, ...]:
    return tuple(len(layer) for layer in standard_monomials(a))


def truncate(a: MonomialAlgebra, m: int) -> MonomialAlgebra:
    """Kill everything of degree above ``m``."""
    if m < 0:
        raise ValidationError("truncation degree must be >= 0")
    extra = [e for e in monomials_of_degree(a.nvars, m + 1) if a.is_standard(e)]
    return MonomialAlgebra(a.nvars, a.gens + tuple(extra))


def socle_level(a: MonomialAlgebra) -> dict:
    layers = standard_monomials(a)
    top = len(layers) - 1
    socle = []
    for deg, layer in enumerate(layers):
        for m in layer:
            ups = (tuple(x + (i == v) for i, x in enumerate(m)) for v in range(a.nvars))
            if not any(a.is_standard(u) for u in ups):
                socle.append((deg, m))
    return {
        "socle_monomials": [m for _, m in socle],
        "socle_degrees": [deg for deg, _ in socle],
        "is_level": all(deg == top for deg, _ in socle),
    }


def trivial_extension_hilbert(h: Sequence[int]) -> tuple[int, ...]:
    """Hilbert function of ``A + omega_A[1]``: ``(h, 0) + (0, reversed h)``."""
    if not h or h[-1] == 0:
        raise ValidationError("last entry must be nonzero (it is the socle degree)")
    a = list(h) + [0]
    b = [0] + list(reversed(h))
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Gorenstein quotients


def _pairing_index(a: MonomialAlgebra, layers: list[list[Exp]]) -> list[np.ndarray]:
    """For each q, the index in the top layer of ``b_i * b_j`` (or -1)."""
    top = len(layers) - 1
    where = {m: k for k, m in enumerate(layers[top])}
    out = []
    for q in range(top + 1):
        idx = np.full((len(layers[q]), len(layers[top - q])), -1, dtype=np.int64)
        for i, x in enumerate(layers[q]):
            for j, y in enumerate(layers[top - q]):
                idx[i, j] = where.get(tuple(s + t for s, t in zip(x, y)), -1)
        out.append(idx)
    return out


def _ranks(field: ff.Field, index: list[np.ndarray], mu: np.ndarray) -> tuple[int, ...]:
    vals = np.concatenate([mu, [0]])
    return tuple(ff.rank(field, vals[idx]) for idx in index)


def term_rank_bound(a: MonomialAlgebra) -> tuple[int, ...]:
    """Largest possible pairing rank per degree, from the zero pattern alone.

    The rank of a matrix never exceeds the maximum matching of its nonzero
    pattern, whatever values the functional takes.
    """
    layers = standard_monomials(a)
    out = []
    for idx in _pairing_index(a, layers):
        g = nx.Graph()
        rows = [("r", i) for i in range(idx.shape[0])]
        g.add_nodes_from(rows)
        g.add_nodes_from(("c", j) for j in range(idx.shape[1]))
        g.add_edges_from((("r", i), ("c", j)) for i, j in zip(*np.nonzero(idx >= 0)))
        out.append(len(nx.bipartite.maximum_matching(g, top_nodes=rows)) // 2)
    return tuple(out)


def gorenstein_hilbert_of(a: MonomialAlgebra, field: ff.Field, mu: Sequence[int]) -> tuple[int, ...]:
    """Hilbert function of the Gorenstein quotient for ``mu`` on the top layer."""
    layers = standard_monomials(a)
    mu = field.asarray(mu)
    if len(mu) != len(layers[-1]):
        raise ValidationError(f"functional needs {len(layers[-1])} values, got {len(mu)}")
    if not np.any(mu):
        raise ValidationError("zero functional")
    return _ranks(field, _pairing_index(a, layers), mu)


def gorenstein_quotient_max(
    a: MonomialAlgebra, field: ff.Field, strategy: str = "exhaustive", trials: int = 100, seed: int = 0
) -> dict:
    """Entrywise max over tested functionals of the Gorenstein-quotient Hilbert function."""
    info = socle_level(a)
    if not info["is_level"]:
        raise ValidationError("algebra is not level")
    layers = standard_monomials(a)
    index = _pairing_index(a, layers)
    k = len(layers[-1])
    if strategy == "exhaustive":
        if field.order**k > EXHAUSTIVE_LIMIT:
            raise ValidationError(f"{field.order}^{k} functionals exceed the exhaustive limit {EXHAUSTIVE_LIMIT}")
        candidates: Iterable = (np.array(t) for t in itertools.product(range(field.order), repeat=k) if any(t))
    elif strategy == "random":
        rng = np.random.default_rng(seed)
        candidates = (field.random(rng, k, nonzero=True) for _ in range(trials))
    else:
        raise ValidationError(f"unknown strategy {strategy!r}")
    best: Optional[tuple[int, ...]] = None
    best_mu, best_sum = None, -1
    tested = 0
    for mu in candidates:
        tested += 1
        r = _ranks(field, index, mu)
        if sum(r) > best_sum:
            best_mu, best_sum = mu, sum(r)
        best = r if best is None else tuple(max(x, y) for x, y in zip(best, r))
    return {
        "max_ranks": list(best or ()),
        "best_mu": [field.hex(x) for x in best_mu] if best_mu is not None else [],
        "tested": tested,
        "strategy": strategy,
        "field": repr(field),
        "structural_bound": list(term_rank_bound(a)),
    }


# ---------------------------------------------------------------------------
# pure O-sequences


def pure_o_sequence(nvars: int, socle_gens: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Degree histogram of all divisors of equal-degree monomials."""
    gens = [tuple(int(x) for x in g) for g in socle_gens]
    if not gens:
        raise ValidationError("need at least one generator")
    if any(len(g) != nvars or min(g) < 0 for g in gens):
        raise ValidationError(f"generators must be exponent vectors in {nvars} variables")
    degs = {sum(g) for g in gens}
    if len(degs) != 1:
        raise ValidationError(f"generators of mixed degrees {sorted(degs)}: not pure")
    ideal = set()
    for g in gens:
        ideal.update(itertools.product(*(range(x + 1) for x in g)))
    hist = [0] * (degs.pop() + 1)
    for m in ideal:
        hist[sum(m)] += 1
    return tuple(hist)


def conjecture_pure_scan(nvars: int, maxdeg: int) -> dict:
    """Check every pure O-sequence generated in degree ``maxdeg``.

    Every nonempty set of degree-``maxdeg`` monomials is an antichain, so all
    of them are scanned; distinct histograms are then tested once each.
    """
    if not 1 <= nvars <= 4 or not 0 <= maxdeg <= 6:
        raise ValidationError("scan limited to nvars <= 4 and maxdeg <= 6")
    tops = monomials_of_degree(nvars, maxdeg)
    if len(tops) > SCAN_LIMIT:
        raise ValidationError(f"{len(tops)} top monomials; the exhaustive scan allows at most {SCAN_LIMIT}")
    allm = [m for deg in range(maxdeg + 1) for m in monomials_of_degree(nvars, deg)]
    pos = {m: i for i, m in enumerate(allm)}
    chunks = (len(allm) + 63) // 64

    def mask(bits):
        out = np.zeros(chunks, dtype=np.uint64)
        for b in bits:
            out[b // 64] |= np.uint64(1) << np.uint64(b % 64)
        return out

    div = [mask(pos[m] for m in itertools.product(*(range(x + 1) for x in t))) for t in tops]
    by_deg = [mask(pos[m] for m in allm if sum(m) == deg) for deg in range(maxdeg + 1)]
    n = len(tops)
    closure = np.zeros((1 << n, chunks), dtype=np.uint64)
    for i in range(n):
        closure[1 << i : 1 << (i + 1)] = closure[: 1 << i] | div[i]
    hist = np.stack(
        [np.bitwise_count(closure & by_deg[deg]).sum(axis=1, dtype=np.int64) for deg in range(maxdeg + 1)], axis=1
    )[1:]
    distinct = sorted({tuple(int(x) for x in row) for row in np.unique(hist, axis=0)})
    violations = []
    for seq in distinct:
        cbar = macaulay.complementary(seq)
        heavy = all(seq[q] <= seq[maxdeg - q] for q in range(maxdeg // 2 + 1))
        if not heavy or not macaulay.is_sum_of_m_vectors(cbar):
            violations.append({"sequence": list(seq), "cbar": list(cbar), "top_heavy": heavy})
    return {
        "nvars": nvars,
        "maxdeg": maxdeg,
        "families": (1 << n) - 1,
        "distinct_sequences": len(distinct),
        "violations": violations,
    }
