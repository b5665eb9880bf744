"""Executable checks for every worked example and the invariant corpus.

Each check returns ``(ok, detail)``; :func:`run_all` times them and records
which library modules were exercised.
"""

from __future__ import annotations

import itertools
import time
from typing import Callable

import numpy as np

from . import ff, homology, macaulay, matroid, monalg, oracles, reduction, scomplex
from .reduction import ThetaRow, ThetaSpec
from .scomplex import SimplicialComplex

GF2_16 = (2, 16)


def _f(p=2, m=16):
    return ff.field_create(p, m)


def sparse_theta() -> ThetaSpec:
    """First parameter supported on the vertices 1, 3, 5 of the theta graph."""
    return ThetaSpec("explicit", (ThetaRow((1, 3, 5)), ThetaRow((1, 2, 3, 4, 5))))


# ---------------------------------------------------------------------------


def check_theta_graph(seed: int = 0):
    cx = scomplex.theta_graph()
    F = _f()
    h, b = scomplex.h_vector(cx), homology.betti(cx, 2)
    dcm = scomplex.is_doubly_cm(cx)
    model = reduction.build_model(cx, F, seed=seed)
    cycles = homology.top_cycle_basis(cx, 2)
    hbar = reduction.hbar_vector(model, cycles)
    coeffs, cert = reduction.find_good_cycle(model, cycles)
    mu = reduction.combine(model, [reduction.cycle_functional(model, c) for c in cycles], coeffs)
    gor = reduction.gorenstein_hilbert(model, mu)
    lef = reduction.lefschetz_rank(model, mu, 1, 0)
    stack = cert["q"][1]["stack"]
    ok = (
        h == (1, 3, 2) and b == (0, 2) and hbar == (1, 3, 2) and dcm
        and gor == (1, 3, 1) and lef == 3 and stack == 3
    )
    return ok, f"h={h} betti={b} hbar={hbar} dcm={dcm} gorenstein={gor} lefschetz={lef} stack={stack}"


def check_sparse_theta(random_trials: int = 100, seeds=(0, 1, 2)):
    cx = scomplex.theta_graph()
    F = _f()
    cycles = homology.top_cycle_basis(cx, 2)
    best, hilb = 0, set()
    for seed in seeds:
        model = reduction.build_model(cx, F, sparse_theta(), seed)
        hilb.add(model.hilbert())
        phis = [reduction.cycle_functional(model, c) for c in cycles]
        combos = [c for c in itertools.product((0, 1), repeat=len(phis)) if any(c)]
        rng = np.random.default_rng(1000 + seed)
        combos += [tuple(F.random(rng, len(phis))) for _ in range(random_trials)]
        for c in combos:
            if not any(c):
                continue
            mu = reduction.combine(model, phis, c)
            best = max(best, reduction.gorenstein_hilbert(model, mu)[1])
    ok = best == 2 and hilb == {(1, 3, 2)}
    return ok, f"hilbert={sorted(hilb)} max middle Gorenstein rank={best} over {len(seeds)} specializations"


def check_at_example():
    hq = (1, 10, 13, 17, 13, 10, 1)
    d = 7
    h = scomplex.chari_h(scomplex.poly_mul(hq, (1, 1)), [hq], d)
    _, cbar = reduction.derive_g_and_c(h, d)
    chain = macaulay.at_chain_check(h)
    gq = scomplex.g_from_h(hq)
    ok = h == (1, 12, 33, 43, 47, 36, 21, 2) and cbar == (1, 9, 3, 4) == gq and chain == (False, 2)
    return ok, f"h={h} cbar={cbar} g(Q)={gq} chain={chain} (33*47={33 * 47} > 43*36={43 * 36})"


def check_construction(seeds=(0, 1, 2)):
    q = scomplex.square_boundary()
    F = _f()
    rows = []
    ok = True
    for a, want_hbar in (((1, 1), (1, 4, 5, 2)), ((3, 1), None)):
        cx = scomplex.construct_from_sum_of_m(a, q)
        cert = reduction.certify(cx, F, seeds)
        good = (
            tuple(cert["cbar"]) == a
            and (want_hbar is None or tuple(cert["hbar"]) == want_hbar)
            and tuple(cert["hbar"]) == scomplex.h_vector(cx)
            and all(r["rank"] == cert["hbar"][r["q"]] for r in cert["lefschetz"])
            and not cert["seed_disagreement"]
        )
        ok &= good
        rows.append(f"a={a}: hbar={tuple(cert['hbar'])} cbar={tuple(cert['cbar'])}")
    gq = scomplex.g_from_h(scomplex.h_vector(q))
    ok &= gq == (1, 1)
    return ok, "; ".join(rows) + f"; g(square)={gq}"


def check_monomial_suite():
    F2, F = _f(2, 1), _f()
    a1 = monalg.MonomialAlgebra(3, ((3, 0, 0), (2, 1, 0), (2, 0, 1), (0, 1, 1), (0, 2, 0), (0, 0, 2)))
    h1 = monalg.hilbert(a1)
    lev1 = monalg.socle_level(a1)["is_level"]
    ex = monalg.gorenstein_quotient_max(a1, F2, "exhaustive")
    rnd = monalg.gorenstein_quotient_max(a1, F, "random", 200)
    a2 = monalg.MonomialAlgebra(3, ((3, 0, 0), (2, 1, 0), (1, 2, 0), (1, 0, 1), (0, 2, 0), (0, 0, 2)))
    g2 = monalg.gorenstein_hilbert_of(a2, F2, [1, 1, 1])
    z = monalg.truncate(monalg.MonomialAlgebra(3, ((0, 1, 3), (0, 0, 4))), 5)
    hz = monalg.hilbert(z)
    triv = monalg.trivial_extension_hilbert(hz)
    cut = triv[:6]
    gbar, cbar = reduction.derive_g_and_c(cut, 5)
    ok = (
        h1 == (1, 3, 3) and lev1
        and ex["max_ranks"][1] == 2 and rnd["max_ranks"][1] == 2 and ex["structural_bound"][1] == 2
        and g2 == (1, 3, 1)
        and hz == (1, 3, 6, 10, 13, 16) and monalg.socle_level(z)["is_level"]
        and triv == (1, 19, 19, 20, 19, 19, 1) and cut == (1, 19, 19, 20, 19, 19)
        and gbar == (1, 18, 0) and macaulay.is_m_vector(gbar)[0]
        and cbar == (18, 0, 1) and not macaulay.is_sum_of_m_vectors(cbar)
        and macaulay.has_internal_zero(cbar)
    )
    return ok, (
        f"first ideal hilbert={h1} level={lev1} middle max={ex['max_ranks'][1]} (GF(2) exhaustive), "
        f"{rnd['max_ranks'][1]} (random), bound={ex['structural_bound'][1]}; second ideal (1,1,1) -> {g2}; "
        f"truncation {hz}, trivial extension {triv}, gbar={gbar}, cbar={cbar}"
    )


def check_matroid():
    m = matroid.search_h(6, 4, (1, 2, 2, 2, 2))
    if m is None:
        return False, "no witness found"
    h, cx = matroid.independence_h(m)
    conc = macaulay.concavity_checks(h, 4)
    cert = reduction.certify(cx, _f())
    ok = (
        len(m.bases) == 9 and matroid.is_coloop_free(m) and not conc["ultra_log_concave"]
        and tuple(cert["hbar"]) == (1, 2, 2, 2, 2) and macaulay.is_sum_of_m_vectors(cert["cbar"])
    )
    return ok, f"bases={len(m.bases)} h={h} ultra={conc['ultra_log_concave']} hbar={cert['hbar']} cbar={cert['cbar']}"


def check_macaulay_oracles():
    bad_seq = [
        a
        for length in range(1, 6)
        for a in itertools.product(range(13), repeat=length)
        if macaulay.is_m_vector(a)[0] != oracles.lex_order_ideal_exists(a)
    ]
    bad_bound = [
        (b, i) for i in range(1, 7) for b in range(101) if macaulay.macaulay_bound(b, i) != oracles.lex_growth(b, i)
    ]
    return not bad_seq and not bad_bound, f"sequence mismatches={bad_seq[:3]} bound mismatches={bad_bound[:3]}"


def invariant_corpus() -> list[tuple[str, SimplicialComplex]]:
    sc = scomplex
    tri = sc.simplex_boundary(2)
    ultra = matroid.search_h(6, 4, (1, 2, 2, 2, 2))
    return [
        ("theta-graph", sc.theta_graph()),
        ("square-with-diagonal", sc.square_with_diagonal()),
        ("triangle", tri),
        ("square", sc.square_boundary()),
        ("pentagon", sc.cyclic_polytope_boundary(2, 5)),
        ("discrete-3", sc.discrete(3)),
        ("tetrahedron-boundary", sc.simplex_boundary(3)),
        ("4-simplex-boundary", sc.simplex_boundary(4)),
        ("octahedron", sc.cross_polytope_boundary(3)),
        ("cyclic-4-6", sc.cyclic_polytope_boundary(4, 6)),
        ("two-triangles", sc.disjoint_union(tri, tri)),
        ("bouquet", sc.validate(5, [[1, 2], [2, 3], [1, 3], [3, 4], [4, 5], [3, 5]])),
        ("square*discrete-3", sc.join(sc.square_boundary(), sc.discrete(3))),
        ("construct-(3,1)", sc.construct_from_sum_of_m((3, 1), sc.square_boundary())),
        ("triangle*discrete-2", sc.join(tri, sc.discrete(2))),
        ("theta*discrete-2", sc.join(sc.theta_graph(), sc.discrete(2))),
        ("octahedron+2-stacks", sc.stacked_attach(sc.cross_polytope_boundary(3), (1, 3, 5), 2)),
        ("tetrahedron+pendant", sc.validate(5, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [4, 5]])),
        ("U(2,4)", matroid.independence_complex(matroid.uniform(2, 4))),
        ("U(3,5)", matroid.independence_complex(matroid.uniform(3, 5))),
        ("U(2,5)", matroid.independence_complex(matroid.uniform(2, 5))),
        ("rank-4-witness", matroid.independence_complex(ultra)),
    ]


def check_invariants(cx: SimplicialComplex, seeds=(0, 1, 2)) -> list[str]:
    """Every failed property for one complex, as messages."""
    F = _f()
    d = cx.d
    errors = []
    cycles = homology.top_cycle_basis(cx, 2)
    per_seed = []
    for s in seeds:
        model = reduction.build_model(cx, F, seed=s)
        phis = [reduction.cycle_functional(model, c) for c in cycles]
        hbar = reduction.hbar_from_functionals(model, phis)
        gors = tuple(reduction.gorenstein_hilbert(model, p) for p in phis if not p.is_zero())
        per_seed.append((model.hilbert(), hbar, gors))
        for g in gors:
            if g != g[::-1] or g[0] != 1:
                errors.append(f"seed {s}: Gorenstein Hilbert {g} not palindromic")
    if len(set(per_seed)) != 1:
        errors.append(f"seed dependence: {per_seed}")
    hbar = per_seed[0][1]
    if any(hbar[q] > hbar[d - q] for q in range(d // 2 + 1)):
        errors.append(f"hbar {hbar} not top-heavy")
    try:
        gbar, cbar = reduction.derive_g_and_c(hbar, d)
    except Exception as exc:  # noqa: BLE001 - reported as a failure
        return errors + [str(exc)]
    if not macaulay.is_m_vector(gbar)[0]:
        errors.append(f"gbar {gbar} not an M-vector")
    if not macaulay.is_sum_of_m_vectors(cbar):
        errors.append(f"cbar {cbar} not a sum of M-vectors")
    if not macaulay.cbar_module_check(cbar, hbar[1], d)[0]:
        errors.append(f"cbar {cbar} fails the module bound with s={hbar[1]}")
    return errors


def check_invariant_corpus(seeds=(0, 1, 2)):
    corpus = invariant_corpus()
    failures = {}
    for name, cx in corpus:
        errs = check_invariants(cx, seeds)
        if errs:
            failures[name] = errs
    return not failures, f"{len(corpus)} complexes, failures={failures}"


def check_charp():
    F = _f(3, 10)
    out = []
    ok = True
    for name, cx in (("octahedron", scomplex.cross_polytope_boundary(3)), ("theta-graph", scomplex.theta_graph())):
        model = reduction.build_model(cx, F, seed=0)
        phis = [reduction.cycle_functional(model, c) for c in homology.top_cycle_basis(cx, 3)]
        rng = np.random.default_rng(0)
        mu = reduction.combine(model, phis, F.random(rng, len(phis), nonzero=True))
        for q in range(cx.d // 3 + 1):
            inj, img, dim = reduction.charp_injectivity(model, mu, q)
            ok &= inj
            out.append(f"{name} q={q}: {img}/{dim}")
    return ok, ", ".join(out)


def check_pure_scan():
    res = [monalg.conjecture_pure_scan(3, 3), monalg.conjecture_pure_scan(2, 4)]
    ok = all(not r["violations"] for r in res)
    return ok, "; ".join(f"({r['nvars']},{r['maxdeg']}): {r['distinct_sequences']} sequences, {len(r['violations'])} violations" for r in res)


CRITERIA: list[tuple[int, str, Callable, float, tuple[str, ...]]] = [
    (1, "theta graph: h, betti, hbar, good functional", check_theta_graph, 1.0, ("scomplex", "homology", "reduction")),
    (2, "sparse parameters: no (1,3,1) quotient", check_sparse_theta, 5.0, ("reduction",)),
    (3, "ear arithmetic and ratio chain", check_at_example, 0.001, ("scomplex", "macaulay")),
    (4, "construction pipeline", check_construction, 10.0, ("scomplex", "reduction", "macaulay")),
    (5, "monomial algebras", check_monomial_suite, 1.0, ("monalg", "macaulay")),
    (6, "matroid search", check_matroid, 60.0, ("matroid", "reduction")),
    (7, "Macaulay oracle equivalence", check_macaulay_oracles, 120.0, ("macaulay",)),
    (8, "invariant corpus", check_invariant_corpus, 300.0, ("reduction", "macaulay", "homology")),
    (9, "odd characteristic injectivity", check_charp, 5.0, ("ff", "reduction")),
    (10, "pure O-sequence scan", check_pure_scan, 60.0, ("monalg",)),
]


def run_all(only=None) -> dict:
    results = []
    touched = set()
    for num, name, fn, limit, mods in CRITERIA:
        if only and num not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # noqa: BLE001 - a crash is a failed criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        touched.update(mods)
        results.append(
            {"criterion": num, "name": name, "ok": bool(ok), "seconds": round(dt, 4), "limit": limit, "detail": detail}
        )
    modules = ["ff", "scomplex", "homology", "reduction", "macaulay", "monalg", "matroid"]
    return {
        "results": results,
        "passed": all(r["ok"] for r in results),
        "coverage": {m: m in touched for m in modules},
    }
