"""Artinian reductions of Stanley-Reisner rings at a random specialization.

``H = K[D]/(theta_1..theta_d)`` is modelled degree by degree: the monomials
of ``K[D]_q`` (supports are faces), the echelon form of the ideal image
``sum_i theta_i K[D]_{q-1}``, and the complementary coset basis.  Every
dimension reported downstream is a rank of a matrix over the working field.

Monomials are sorted tuples with repetition, so ``x1^2 x3`` is ``(1, 1, 3)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import factorial
from typing import Optional, Sequence

import numpy as np

from . import ff, homology, macaulay
from .errors import InconsistencyError, SpecializationFailure, ValidationError
from .homology import Cycle
from .scomplex import SimplicialComplex

Monomial = tuple[int, ...]

MAX_RESAMPLE = 8


# ---------------------------------------------------------------------------
# linear systems of parameters


@dataclass(frozen=True)
class ThetaRow:
    support: tuple[int, ...]
    coeffs: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class ThetaSpec:
    """``generic`` draws every coefficient; ``explicit`` fixes the supports."""

    mode: str = "generic"
    rows: tuple[ThetaRow, ...] = ()

    def to_json(self) -> dict:
        if self.mode == "generic":
            return {"mode": "generic"}
        rows = []
        for r in self.rows:
            row = {"support": list(r.support)}
            if r.coeffs is not None:
                row["coeffs"] = list(r.coeffs)
            rows.append(row)
        return {"mode": "explicit", "rows": rows}


GENERIC = ThetaSpec()


def theta_from_json(data: dict) -> ThetaSpec:
    mode = data.get("mode", "generic")
    if mode == "generic":
        return GENERIC
    if mode != "explicit":
        raise ValidationError(f"unknown theta mode {mode!r}")
    rows = []
    for r in data.get("rows", []):
        support = tuple(sorted(int(v) for v in r["support"]))
        if not support:
            raise ValidationError("explicit theta row with empty support")
        coeffs = r.get("coeffs")
        if coeffs is not None:
            coeffs = tuple(int(c) for c in coeffs)
            if len(coeffs) != len(support):
                raise ValidationError("theta row coefficients must match its support")
        rows.append(ThetaRow(support, coeffs))
    return ThetaSpec("explicit", tuple(rows))


def _draw_theta(cx: SimplicialComplex, field: ff.Field, spec: ThetaSpec, rng) -> np.ndarray:
    d, n = cx.d, cx.n
    if spec.mode == "generic":
        return field.random(rng, (d, n))
    if len(spec.rows) != d:
        raise ValidationError(f"explicit theta needs {d} rows, got {len(spec.rows)}")
    theta = field.zeros((d, n))
    for i, row in enumerate(spec.rows):
        if row.support[0] < 1 or row.support[-1] > n:
            raise ValidationError(f"theta support {list(row.support)} not inside 1..{n}")
        if row.coeffs is None:
            vals = field.random(rng, len(row.support), nonzero=True)
        else:
            vals = np.array([c % field.p for c in row.coeffs], dtype=np.int64)
        theta[i, [v - 1 for v in row.support]] = vals
    return theta


# ---------------------------------------------------------------------------
# monomials


def _key(m: Monomial):
    support = tuple(sorted(set(m)))
    # non-squarefree first: echelon pivots land on them, leaving face monomials as coset reps
    return (len(support) == len(m), support, m)


def monomial_basis(cx: SimplicialComplex, q: int) -> tuple[Monomial, ...]:
    """Degree-``q`` monomials of ``K[D]`` (support a face), in pivot order."""
    if q == 0:
        return ((),)
    out = []
    for k in range(1, min(q, cx.d) + 1):
        for face in cx.faces(k):
            for extra in itertools.combinations_with_replacement(face, q - k):
                out.append(tuple(sorted(face + extra)))
    return tuple(sorted(out, key=_key))


def merge(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


def multinomial(m: Monomial) -> int:
    out = factorial(len(m))
    for c in Counter(m).values():
        out //= factorial(c)
    return out


# ---------------------------------------------------------------------------
# the model


@dataclass
class ArtinianModel:
    complex: SimplicialComplex
    field: ff.Field
    theta: np.ndarray
    seed: int
    spec: ThetaSpec
    bases: list[tuple[Monomial, ...]]
    index: list[dict]
    ideal: list[np.ndarray]
    cosets: list[tuple[Monomial, ...]]
    nf_top: np.ndarray
    facet_dets: dict
    attempts: int = 1
    _lefschetz_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.complex.d

    def hilbert(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cosets)


def _ideal_rref(cx, field, theta, lower, index_q, nq):
    d, n = theta.shape
    rows = field.zeros((d * len(lower), nq))
    for k, m in enumerate(lower):
        for j in range(1, n + 1):
            col = index_q.get(merge(m, (j,)))
            if col is not None:
                rows[k::len(lower), col] = theta[:, j - 1]
    if rows.shape[0] == 0:
        return field.zeros((0, nq)), []
    r, piv = ff.rref(field, rows)
    return r[: len(piv)], piv


def _normal_form(field, r, pivots, nq):
    free = [c for c in range(nq) if c not in set(pivots)]
    nf = field.zeros((nq, len(free)))
    for k, f in enumerate(free):
        nf[f, k] = 1
        for i, pc in enumerate(pivots):
            nf[pc, k] = field.neg(r[i, f])
    return nf, free


def _assemble(cx, field, theta, seed, spec, attempts) -> ArtinianModel:
    d = cx.d
    bases = [monomial_basis(cx, q) for q in range(d + 1)]
    index = [{m: i for i, m in enumerate(b)} for b in bases]
    ideal, cosets = [field.zeros((0, 1))], [((),)]
    nf_top = field.identity(1)
    for q in range(1, d + 1):
        r, piv = _ideal_rref(cx, field, theta, bases[q - 1], index[q], len(bases[q]))
        nf, free = _normal_form(field, r, piv, len(bases[q]))
        ideal.append(r)
        cosets.append(tuple(bases[q][f] for f in free))
        if q == d:
            nf_top = nf
    dets = {}
    for face in cx.faces(d):
        dets[face] = int(ff.det(field, theta[:, [v - 1 for v in face]]))
    return ArtinianModel(cx, field, theta, seed, spec, bases, index, ideal, cosets, nf_top, dets, attempts)


def build_model(
    cx: SimplicialComplex, field: ff.Field, theta: ThetaSpec = GENERIC, seed: int = 0
) -> ArtinianModel:
    """Generic (or explicitly supported) artinian reduction at a seeded specialization."""
    top = homology.betti(cx, field.p)[-1]
    if top == 0:
        raise ValidationError(f"beta_{cx.d - 1} vanishes over GF({field.p}); no top cycles")
    rng = np.random.default_rng(seed)
    if theta.mode != "generic":
        return _assemble(cx, field, _draw_theta(cx, field, theta, rng), seed, theta, 1)
    for attempt in range(1, MAX_RESAMPLE + 1):
        th = _draw_theta(cx, field, theta, rng)
        model = _assemble(cx, field, th, seed, theta, attempt)
        if all(model.facet_dets.values()) and len(model.cosets[-1]) == top:
            return model
    raise InconsistencyError(
        f"specialization degenerate after {MAX_RESAMPLE} draws; use a larger field or another seed"
    )


def hilbert_H(model: ArtinianModel) -> tuple[int, ...]:
    return model.hilbert()


# ---------------------------------------------------------------------------
# functionals on the top degree


@dataclass(frozen=True, eq=False)
class Functional:
    """Values on every degree-``d`` monomial of ``K[D]``; kills the ideal image."""

    model: ArtinianModel
    values: np.ndarray

    def __post_init__(self):
        f = self.model.field
        r = self.model.ideal[self.model.d]
        if r.shape[0] and np.any(f.matmul(r, self.values[:, None])):
            raise InconsistencyError("functional does not vanish on the ideal image")

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def on_cosets(self) -> np.ndarray:
        idx = self.model.index[self.model.d]
        return self.values[[idx[m] for m in self.model.cosets[-1]]]

    def __call__(self, m: Monomial) -> int:
        i = self.model.index[self.model.d].get(m)
        return 0 if i is None else int(self.values[i])


def functional_from_cosets(model: ArtinianModel, coset_values) -> Functional:
    v = model.field.asarray(coset_values)
    return Functional(model, model.field.matmul(model.nf_top, v[:, None])[:, 0])


def cycle_functional(model: ArtinianModel, c: Cycle) -> Functional:
    """The functional with value ``c_F / [F]`` on each facet monomial ``x^F``."""
    f = model.field
    if c.p != f.p:
        raise ValidationError(f"cycle is over GF({c.p}) but the model has characteristic {f.p}")
    if c.complex != model.complex:
        raise ValidationError("cycle belongs to a different complex")
    if c.is_zero():
        return Functional(model, f.zeros(len(model.bases[-1])))
    faces = c.facets
    idx = model.index[model.d]
    rows = model.nf_top[[idx[face] for face in faces]]
    rhs = f.zeros(len(faces))
    for k, (face, coeff) in enumerate(zip(faces, c.coeffs)):
        det = model.facet_dets[face]
        if det == 0:
            if coeff:
                raise InconsistencyError(f"[F] vanishes on facet {face} carrying the cycle")
            continue
        rhs[k] = f.div(coeff, det)
    sol = ff.solve(f, rows, rhs)
    if sol is None:
        raise InconsistencyError("no functional matches the cycle: non-cycle or degenerate specialization")
    return functional_from_cosets(model, sol)


def combine(model: ArtinianModel, functionals: Sequence[Functional], coeffs) -> Functional:
    f = model.field
    vals = f.zeros(len(model.bases[-1]))
    for phi, a in zip(functionals, coeffs):
        if a:
            vals = f.add(vals, f.mul(phi.values, int(a)))
    return Functional(model, vals)


# ---------------------------------------------------------------------------
# pairings


def _form(model: ArtinianModel, values: np.ndarray, deg: int, q: int) -> np.ndarray:
    """``(x, y) -> psi(x*y)`` with ``psi`` given on all degree-``deg`` monomials."""
    f = model.field
    rows, cols = model.cosets[q], model.cosets[deg - q]
    idx = model.index[deg]
    mat = f.zeros((len(rows), len(cols)))
    for i, a in enumerate(rows):
        for j, b in enumerate(cols):
            k = idx.get(merge(a, b))
            if k is not None:
                mat[i, j] = values[k]
    return mat


def _check_degree(model, q):
    if not 0 <= q <= model.d:
        raise ValidationError(f"degree {q} outside 0..{model.d}")


def pairing_matrix(model: ArtinianModel, phi: Functional, q: int) -> np.ndarray:
    _check_degree(model, q)
    return _form(model, phi.values, model.d, q)


def hbar_vector(model: ArtinianModel, cycles: Sequence[Cycle]) -> tuple[int, ...]:
    """Level quotient Hilbert function: ranks of the side-by-side pairing matrices."""
    phis = [cycle_functional(model, c) for c in cycles]
    return hbar_from_functionals(model, phis)


def hbar_from_functionals(model: ArtinianModel, phis: Sequence[Functional]) -> tuple[int, ...]:
    f = model.field
    return tuple(
        ff.rank(f, np.hstack([pairing_matrix(model, phi, q) for phi in phis])) for q in range(model.d + 1)
    )


def gorenstein_hilbert(model: ArtinianModel, phi: Functional) -> tuple[int, ...]:
    if phi.is_zero():
        raise ValidationError("the zero functional has no Gorenstein quotient")
    return tuple(ff.rank(model.field, pairing_matrix(model, phi, q)) for q in range(model.d + 1))


def _power_matrix(model: ArtinianModel, e: int) -> np.ndarray:
    """Coefficients of ``l^e`` carrying degree ``d-e`` monomials to degree ``d``."""
    key = e
    cache = model._lefschetz_cache
    if key in cache:
        return cache[key]
    f, d, n = model.field, model.d, model.complex.n
    low, top = model.bases[d - e], model.index[d]
    mat = f.zeros((len(low), len(top)))
    for mono in itertools.combinations_with_replacement(range(1, n + 1), e):
        coef = multinomial(mono) % f.p
        if not coef:
            continue
        for i, m in enumerate(low):
            k = top.get(merge(m, mono))
            if k is not None:
                mat[i, k] = f.add(mat[i, k], coef)
    cache[key] = mat
    return mat


def lefschetz_values(model: ArtinianModel, phi: Functional, e: int) -> np.ndarray:
    """``m -> phi(m * l^e)`` on every degree ``d-e`` monomial."""
    f = model.field
    return f.matmul(_power_matrix(model, e), phi.values[:, None])[:, 0]


def lefschetz_form(model: ArtinianModel, phi: Functional, q: int, e: int) -> np.ndarray:
    # pairs H^q with H^{d-q-e}
    if q < 0 or e < 0 or q + e > model.d:
        raise ValidationError(f"no form for q={q}, e={e} when d={model.d}")
    return _form(model, lefschetz_values(model, phi, e), model.d - e, q)


def lefschetz_rank(model: ArtinianModel, phi: Functional, q: int, e: int) -> int:
    """Rank of ``(x, y) -> phi(x*y*l^e)`` on ``H^q x H^{d-q-e}``."""
    return ff.rank(model.field, lefschetz_form(model, phi, q, e))


def stacked_lefschetz_rank(model: ArtinianModel, phis: Sequence[Functional], q: int, e: int) -> int:
    """Rank of the ``l^e`` map out of ``H^q`` into the level quotient."""
    return ff.rank(model.field, np.hstack([lefschetz_form(model, phi, q, e) for phi in phis]))


# ---------------------------------------------------------------------------
# the perturbation search


def _stack_rank(model, phis, q):
    return ff.rank(model.field, np.hstack([pairing_matrix(model, p, q) for p in phis]))


def find_good_cycle(
    model: ArtinianModel, cycles: Sequence[Cycle], trials: int = 8, rng=None
) -> tuple[tuple[int, ...], dict]:
    """Combine a cycle basis into one functional realizing ``h-bar`` up to degree d/2.

    Grows ``mu = mu_1 + lambda_2 mu_2 + ...`` one cycle at a time, keeping for
    every ``q <= d/2`` both the Gorenstein rank and the ``l^(d-2q)`` rank equal
    to the rank of the stacked pairings seen so far.
    """
    f, d = model.field, model.d
    if f.p != 2:
        raise ValidationError("the good-cycle search is only justified in characteristic 2")
    if not cycles:
        raise ValidationError("empty cycle basis")
    if rng is None:
        rng = np.random.default_rng(model.seed)
    phis = [cycle_functional(model, c) for c in cycles]
    degrees = range(d // 2 + 1)

    def good(nu, targets):
        for q in degrees:
            if ff.rank(f, pairing_matrix(model, nu, q)) != targets[q]:
                return False
            if lefschetz_rank(model, nu, q, d - 2 * q) != targets[q]:
                return False
        return True

    coeffs = [1] + [0] * (len(phis) - 1)
    mu = phis[0]
    targets = [_stack_rank(model, phis[:1], q) for q in degrees]
    if not good(mu, targets):
        raise SpecializationFailure("first cycle fails the Lefschetz check; try another seed", best=tuple(coeffs))
    for t in range(1, len(phis)):
        targets = [_stack_rank(model, phis[: t + 1], q) for q in degrees]
        for _ in range(trials):
            lam = int(f.random(rng, nonzero=True))
            nu = combine(model, [mu, phis[t]], [1, lam])
            if good(nu, targets):
                mu, coeffs[t] = nu, lam
                break
        else:
            raise SpecializationFailure(
                f"no good perturbation for cycle {t + 1} in {trials} draws; use a larger field or another seed",
                best=tuple(coeffs),
            )
    cert = {
        "q": [
            {
                "q": q,
                "hbar": targets[q],
                "gorenstein": ff.rank(f, pairing_matrix(model, mu, q)),
                "lefschetz": lefschetz_rank(model, mu, q, d - 2 * q),
                "stack": stacked_lefschetz_rank(model, phis, q, d - 2 * q),
            }
            for q in degrees
        ],
        "gorenstein_hilbert": list(gorenstein_hilbert(model, mu)),
    }
    return tuple(coeffs), cert


def charp_injectivity(model: ArtinianModel, phi: Functional, q: int) -> tuple[bool, int, int]:
    """``l^(d-pq)`` from degree ``q`` of the Gorenstein quotient; returns (injective, map rank, dim)."""
    p, d = model.field.p, model.d
    if q < 0 or p * q > d:
        raise ValidationError(f"need 0 <= q <= d/p = {d}/{p}, got q={q}")
    dim = ff.rank(model.field, pairing_matrix(model, phi, q))
    img = lefschetz_rank(model, phi, q, d - p * q)
    return img == dim, img, dim


def derive_g_and_c(hbar: Sequence[int], d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if len(hbar) != d + 1:
        raise ValidationError(f"expected {d + 1} entries, got {len(hbar)}")
    gbar = (hbar[0],) + tuple(hbar[i] - hbar[i - 1] for i in range(1, d // 2 + 1))
    if any(g < 0 for g in gbar[1:]):
        raise InconsistencyError(f"g-bar {gbar} has a negative entry; h-bar is not top-heavy")
    return gbar, macaulay.complementary(hbar)


# ---------------------------------------------------------------------------
# multi-seed runs and certificates


def hbar_multiseed(
    cx: SimplicialComplex, field: ff.Field, seeds: Sequence[int], theta: ThetaSpec = GENERIC
) -> tuple[tuple[int, ...], list[tuple[int, ...]], bool]:
    """Entrywise max over seeds, every per-seed value, and whether the seeds disagreed."""
    cycles = homology.top_cycle_basis(cx, field.p)
    runs = [hbar_vector(build_model(cx, field, theta, s), cycles) for s in seeds]
    best = tuple(max(col) for col in zip(*runs))
    return best, runs, any(r != best for r in runs)


def certify(
    cx: SimplicialComplex,
    field: ff.Field,
    seeds: Sequence[int] = (0, 1, 2),
    theta: ThetaSpec = GENERIC,
    trials: int = 8,
) -> dict:
    """Full pipeline: h-bar, its g and c vectors, the inequality checks and a good functional."""
    d = cx.d
    hbar, runs, disagree = hbar_multiseed(cx, field, seeds, theta)
    gbar, cbar = derive_g_and_c(hbar, d)
    out = {
        "hbar": list(hbar),
        "gbar": list(gbar),
        "cbar": list(cbar),
        "seeds": list(seeds),
        "seed_disagreement": disagree,
        "checks": {
            "top_heavy": all(hbar[q] <= hbar[d - q] for q in range(d // 2 + 1)),
            "gbar_m_vector": macaulay.is_m_vector(gbar)[0],
            "cbar_sum_of_m": macaulay.is_sum_of_m_vectors(cbar),
            "cbar_module": macaulay.cbar_module_check(cbar, hbar[1], d)[0] if d >= 1 else True,
        },
    }
    if field.p == 2:
        model = build_model(cx, field, theta, seeds[0])
        cycles = homology.top_cycle_basis(cx, field.p)
        coeffs, cert = find_good_cycle(model, cycles, trials)
        out["mu"] = [field.hex(c) for c in coeffs]
        out["gorenstein"] = cert["gorenstein_hilbert"]
        out["lefschetz"] = [{"q": r["q"], "rank": r["lefschetz"]} for r in cert["q"]]
        out["injectivity"] = [{"q": r["q"], "rank": r["stack"]} for r in cert["q"]]
    return out
