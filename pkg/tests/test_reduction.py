import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from levelq import ff, homology as hm, macaulay as mc, reduction as rd, scomplex as sc
from levelq.errors import InconsistencyError, ValidationError

F16 = ff.field_create(2, 16)
F3 = ff.field_create(3, 10)
OCTA = sc.cross_polytope_boundary(3)
THETA = sc.theta_graph()


def model_and_phis(cx, field=F16, seed=0, theta=rd.GENERIC):
    m = rd.build_model(cx, field, theta, seed)
    cycles = hm.top_cycle_basis(cx, field.p)
    return m, cycles, [rd.cycle_functional(m, c) for c in cycles]


def brute_hbar(model, phis):
    """Common kernel of v -> phi_t(v * x^J) in full K[D]_q coordinates, one constraint at a time."""
    f = model.field
    d, n = model.d, model.complex.n
    out = []
    for q in range(d + 1):
        basis = model.bases[q]
        w = f.identity(len(basis))
        for phi in phis:
            for J in itertools.combinations_with_replacement(range(1, n + 1), d - q):
                row = f.asarray([phi(rd.merge(m, J)) if model.complex.is_face(set(m) | set(J)) else 0 for m in basis])
                img = f.matmul(row[None, :], w)
                if not np.any(img):
                    continue
                w = f.matmul(w, ff.kernel_basis(f, img))
        out.append(len(basis) - w.shape[1])
    return tuple(out)


@st.composite
def complexes(draw):
    """A simplex boundary plus extra faces no larger than its facets, so a top cycle survives."""
    d = draw(st.integers(2, 3))
    sphere = draw(st.sets(st.integers(1, 6), min_size=d + 1, max_size=d + 1))
    facets = [tuple(sorted(f)) for f in itertools.combinations(sorted(sphere), d)]
    extra = draw(st.lists(st.frozensets(st.integers(1, 6), min_size=1, max_size=d), max_size=6))
    facets += [tuple(sorted(f)) for f in extra]
    return sc.relabeled(facets)


# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "cx,h",
    [(THETA, (1, 3, 2)), (OCTA, (1, 3, 3, 1)), (sc.square_with_diagonal(), (1, 2, 2)),
     (sc.cyclic_polytope_boundary(4, 7), (1, 3, 6, 3, 1))],
)
def test_hilbert_of_cm_complexes_is_h(cx, h):
    assert rd.hilbert_H(rd.build_model(cx, F16, seed=3)) == h


def test_hilbert_of_two_triangles_is_seed_independent():
    cx = sc.disjoint_union(sc.simplex_boundary(2), sc.simplex_boundary(2))
    vals = {rd.hilbert_H(rd.build_model(cx, F16, seed=s)) for s in range(3)}
    assert vals == {(1, 4, 2)}


def test_build_model_is_deterministic():
    a, b = rd.build_model(THETA, F16, seed=11), rd.build_model(THETA, F16, seed=11)
    assert np.array_equal(a.theta, b.theta) and a.cosets == b.cosets


def test_build_model_rejects_acyclic():
    with pytest.raises(ValidationError):
        rd.build_model(sc.simplex(2), F16)


def test_build_model_small_field_gives_up():
    # over GF(2) some [F] vanishes for every draw of theta on the octahedron
    with pytest.raises(InconsistencyError):
        rd.build_model(OCTA, ff.field_create(2, 1), seed=0)


def test_coset_representatives_are_face_monomials():
    m = rd.build_model(OCTA, F16, seed=0)
    for layer in m.cosets:
        for mono in layer:
            assert len(set(mono)) == len(mono) and OCTA.is_face(mono)


def test_explicit_theta():
    spec = rd.theta_from_json({"mode": "explicit", "rows": [{"support": [1, 3, 5]}, {"support": [1, 2, 3, 4, 5]}]})
    m = rd.build_model(THETA, F16, spec, seed=0)
    assert m.hilbert() == (1, 3, 2)
    assert not m.theta[0, 1] and not m.theta[0, 3] and all(m.theta[0, [0, 2, 4]])
    assert rd.theta_from_json(spec.to_json()) == spec


@pytest.mark.parametrize(
    "data",
    [{"mode": "explicit", "rows": [{"support": []}, {"support": [1]}]}, {"mode": "weird"},
     {"mode": "explicit", "rows": [{"support": [1, 2], "coeffs": [1]}]}],
)
def test_bad_theta_json(data):
    with pytest.raises(ValidationError):
        rd.theta_from_json(data)


def test_explicit_theta_wrong_row_count():
    spec = rd.theta_from_json({"mode": "explicit", "rows": [{"support": [1, 3, 5]}]})
    with pytest.raises(ValidationError):
        rd.build_model(THETA, F16, spec)


@pytest.mark.parametrize("field", [F16, F3])
def test_cycle_functional_takes_prescribed_facet_values(field):
    for cx in (OCTA, THETA, sc.join(sc.square_boundary(), sc.discrete(3))):
        m, cycles, phis = model_and_phis(cx, field, seed=2)
        for c, phi in zip(cycles, phis):
            for face, coeff in zip(c.facets, c.coeffs):
                assert phi(face) == int(field.div(coeff, m.facet_dets[face]))


def test_cycle_functional_zero_on_non_support():
    m, cycles, phis = model_and_phis(THETA)
    assert phis[0]((2, 3)) == 0 and phis[0]((3, 4)) == 0


def test_zero_cycle_gives_zero_functional():
    m, cycles, _ = model_and_phis(THETA)
    phi = rd.cycle_functional(m, hm.Cycle(THETA, 2, (0,) * 6))
    assert phi.is_zero()
    assert not np.any(rd.pairing_matrix(m, phi, 1))
    with pytest.raises(ValidationError):
        rd.gorenstein_hilbert(m, phi)


def test_non_cycle_is_inconsistent():
    m = rd.build_model(OCTA, F3, seed=0)
    with pytest.raises(InconsistencyError):
        rd.cycle_functional(m, hm.Cycle(OCTA, 3, (1,) * 8))


def test_cycle_field_mismatch():
    m = rd.build_model(OCTA, F16, seed=0)
    with pytest.raises(ValidationError):
        rd.cycle_functional(m, hm.top_cycle_basis(OCTA, 3)[0])


def test_pairing_degree_zero_row():
    m, _, phis = model_and_phis(OCTA)
    row = rd.pairing_matrix(m, phis[0], 0)
    assert row.shape == (1, 1) and np.array_equal(row[0], phis[0].on_cosets())


def test_octahedron_ranks():
    for seed in range(3):
        m, _, (phi,) = model_and_phis(OCTA, seed=seed)
        assert ff.rank(F16, rd.pairing_matrix(m, phi, 1)) == 3
        assert rd.gorenstein_hilbert(m, phi) == (1, 3, 3, 1)
        assert rd.lefschetz_rank(m, phi, 1, 1) == 3
        assert rd.lefschetz_rank(m, phi, 0, 3) == 1


@pytest.mark.parametrize(
    "cx,want",
    [(THETA, (1, 3, 2)), (sc.square_with_diagonal(), (1, 2, 2)),
     (sc.join(sc.square_boundary(), sc.discrete(3)), (1, 4, 5, 2))],
)
def test_hbar_examples(cx, want):
    m, cycles, phis = model_and_phis(cx)
    assert rd.hbar_vector(m, cycles) == want
    assert brute_hbar(m, phis) == want


def test_hbar_multiseed():
    hbar, runs, disagree = rd.hbar_multiseed(THETA, F16, [0, 1, 2])
    assert hbar == (1, 3, 2) and len(runs) == 3 and not disagree


@pytest.mark.parametrize(
    "cx",
    [sc.disjoint_union(sc.simplex_boundary(2), sc.simplex_boundary(2)),
     sc.validate(5, [[1, 2], [2, 3], [1, 3], [3, 4], [4, 5], [3, 5]]),
     sc.validate(5, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [4, 5]])],
)
def test_hbar_against_brute_force_non_doubly_cm(cx):
    m, cycles, phis = model_and_phis(cx, seed=1)
    assert rd.hbar_vector(m, cycles) == brute_hbar(m, phis)


@given(complexes(), st.integers(0, 2**16))
def test_properties_on_random_complexes(cx, seed):
    d = cx.d
    m, cycles, phis = model_and_phis(cx, seed=seed)
    hbar = rd.hbar_from_functionals(m, phis)
    assert hbar[0] == 1 and hbar[d] == len(cycles)
    assert all(hbar[q] <= hbar[d - q] for q in range(d // 2 + 1))
    assert all(x <= y for x, y in zip(hbar, m.hilbert()))
    assert hbar == brute_hbar(m, phis)
    other = rd.build_model(cx, F16, seed=seed + 1)
    assert rd.hbar_vector(other, cycles) == hbar and other.hilbert() == m.hilbert()
    gbar, cbar = rd.derive_g_and_c(hbar, d)
    assert mc.is_m_vector(gbar)[0]
    assert mc.is_sum_of_m_vectors(cbar)
    assert mc.cbar_module_check(cbar, hbar[1], d)[0]
    for phi in phis:
        g = rd.gorenstein_hilbert(m, phi)
        assert g == g[::-1] and g[0] == 1
        # prime-field cycles have the strong Lefschetz property
        for q in range(d // 2 + 1):
            assert rd.lefschetz_rank(m, phi, q, d - 2 * q) == g[q]
    for q in range(d // 2 + 1):
        assert rd.stacked_lefschetz_rank(m, phis, q, d - 2 * q) == hbar[q]


def test_hbar_equals_h_for_doubly_cm():
    for cx in (THETA, sc.square_with_diagonal(), OCTA, sc.join(THETA, sc.discrete(2))):
        assert sc.is_doubly_cm(cx)
        m, cycles, _ = model_and_phis(cx)
        assert rd.hbar_vector(m, cycles) == sc.h_vector(cx)


def test_find_good_cycle_theta():
    m, cycles, phis = model_and_phis(THETA)
    coeffs, cert = rd.find_good_cycle(m, cycles)
    mu = rd.combine(m, phis, coeffs)
    assert rd.gorenstein_hilbert(m, mu) == (1, 3, 1)
    assert [r["lefschetz"] for r in cert["q"]] == [1, 3]
    assert [r["stack"] for r in cert["q"]] == [1, 3]
    # single basis cycles only reach (1, 2, 1)
    assert all(rd.gorenstein_hilbert(m, p) == (1, 2, 1) for p in phis)


def test_find_good_cycle_octahedron_is_fundamental_class():
    m, cycles, _ = model_and_phis(OCTA)
    coeffs, cert = rd.find_good_cycle(m, cycles)
    assert coeffs == (1,) and cert["gorenstein_hilbert"] == [1, 3, 3, 1]


def test_find_good_cycle_construction():
    cx = sc.construct_from_sum_of_m((1, 1), sc.square_boundary())
    m, cycles, _ = model_and_phis(cx)
    assert rd.hbar_vector(m, cycles) == (1, 4, 5, 2)
    _, cert = rd.find_good_cycle(m, cycles)
    assert [r["gorenstein"] for r in cert["q"]] == [1, 4]
    assert rd.derive_g_and_c((1, 4, 5, 2), 3)[1] == (1, 1)


def test_find_good_cycle_needs_char_2():
    m, cycles, _ = model_and_phis(THETA, F3)
    with pytest.raises(ValidationError):
        rd.find_good_cycle(m, cycles)


def test_sparse_theta_never_reaches_131():
    spec = rd.theta_from_json({"mode": "explicit", "rows": [{"support": [1, 3, 5]}, {"support": [1, 2, 3, 4, 5]}]})
    for seed in range(3):
        m, cycles, phis = model_and_phis(THETA, seed=seed, theta=spec)
        rng = np.random.default_rng(seed)
        for _ in range(30):
            mu = rd.combine(m, phis, F16.random(rng, 2, nonzero=True))
            assert rd.gorenstein_hilbert(m, mu)[1] <= 2
        with pytest.raises(Exception):
            rd.find_good_cycle(m, cycles)


def test_charp_injectivity():
    m, _, (phi,) = model_and_phis(OCTA, F3)
    assert rd.charp_injectivity(m, phi, 1) == (True, 3, 3)
    assert rd.charp_injectivity(m, phi, 0)[0]
    with pytest.raises(ValidationError):
        rd.charp_injectivity(m, phi, 2)
    m, _, phis = model_and_phis(THETA, F3)
    mu = rd.combine(m, phis, [1, 2])
    assert rd.charp_injectivity(m, mu, 0)[0]


def test_charp_in_char_2_is_the_lefschetz_check():
    m, cycles, phis = model_and_phis(OCTA)
    for q in (0, 1):
        inj, img, dim = rd.charp_injectivity(m, phis[0], q)
        assert img == rd.lefschetz_rank(m, phis[0], q, 3 - 2 * q) and inj


def test_lefschetz_form_bounds():
    m, _, (phi,) = model_and_phis(OCTA)
    with pytest.raises(ValidationError):
        rd.lefschetz_rank(m, phi, 2, 2)


def test_derive_g_and_c():
    assert rd.derive_g_and_c((1, 12, 33, 43, 47, 36, 21, 2), 7) == ((1, 11, 21, 10), (1, 9, 3, 4))
    assert rd.derive_g_and_c((1, 3, 2), 2) == ((1, 2), (1,))
    assert rd.derive_g_and_c((1, 2, 2), 2) == ((1, 1), (1,))
    with pytest.raises(InconsistencyError):
        rd.derive_g_and_c((1, 3, 2, 2, 1), 4)
    with pytest.raises(ValidationError):
        rd.derive_g_and_c((1, 2), 2)


def test_certify_report_shape():
    cert = rd.certify(THETA, F16)
    assert cert["hbar"] == [1, 3, 2] and cert["gorenstein"] == [1, 3, 1]
    assert all(cert["checks"].values())
    assert all(isinstance(x, str) and x.startswith("0x") for x in cert["mu"])
