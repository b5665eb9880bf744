from math import comb

import pytest
from hypothesis import given, strategies as st

from levelq import scomplex as sc
from levelq.errors import InconsistencyError, ValidationError


def h_direct(f, d):
    """h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_(i-1)."""
    return tuple(sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1))


def test_theta_graph_vectors():
    cx = sc.theta_graph()
    assert sc.f_vector(cx) == (1, 5, 6)
    assert sc.h_vector(cx) == (1, 3, 2)
    assert sc.h_vector(sc.square_with_diagonal()) == (1, 2, 2)


@pytest.mark.parametrize(
    "cx,h",
    [
        (sc.cross_polytope_boundary(3), (1, 3, 3, 1)),
        (sc.cross_polytope_boundary(4), (1, 4, 6, 4, 1)),
        (sc.simplex_boundary(3), (1, 1, 1, 1)),
        (sc.cyclic_polytope_boundary(4, 7), (1, 3, 6, 3, 1)),
        (sc.simplex(3), (1, 0, 0, 0, 0)),
        (sc.square_boundary(), (1, 2, 1)),
    ],
)
def test_known_h_vectors(cx, h):
    assert sc.h_vector(cx) == h


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_cyclic_4_polytope_facet_count(n):
    assert len(sc.cyclic_polytope_boundary(4, n).facets) == n * (n - 3) // 2


@pytest.mark.parametrize("m,n", [(2, 6), (3, 6), (4, 7), (5, 8), (4, 8)])
def test_sphere_h_vectors_are_palindromic(m, n):
    h = sc.h_vector(sc.cyclic_polytope_boundary(m, n))
    assert h == h[::-1]


@given(st.lists(st.frozensets(st.integers(1, 6), min_size=1, max_size=3), min_size=1, max_size=8))
def test_h_transform_matches_direct_formula(facets):
    cx = sc.relabeled(sorted(tuple(sorted(f)) for f in facets))
    f = sc.f_vector(cx)
    assert sc.h_vector(cx) == h_direct(f, cx.d)
    assert sum(sc.h_vector(cx)) == f[-1]


def test_join_multiplies_h_polynomials():
    a, b = sc.theta_graph(), sc.discrete(3)
    assert sc.h_vector(sc.join(a, b)) == sc.poly_mul(sc.h_vector(a), sc.h_vector(b))


def test_stacked_attach_adds_ones():
    base = sc.cross_polytope_boundary(3)
    out = sc.stacked_attach(base, (1, 3, 5), 2)
    assert out.n == 8
    assert sc.h_vector(out) == (1, 5, 5, 3)


def test_chari_h_example():
    hq = (1, 10, 13, 17, 13, 10, 1)
    assert sc.chari_h(sc.poly_mul(hq, (1, 1)), [hq], 7) == (1, 12, 33, 43, 47, 36, 21, 2)
    with pytest.raises(InconsistencyError):
        sc.chari_h((1, -5), [], 1)


@pytest.mark.parametrize("a,h", [((1, 1), (1, 4, 5, 2)), ((3, 1), (1, 6, 7, 4)), ((0, 0), (1, 1, 1, 1))])
def test_construct_from_sum_of_m(a, h):
    cx = sc.construct_from_sum_of_m(a, sc.square_boundary())
    assert sc.h_vector(cx) == h
    if any(a):
        first, ears, d = sc.construction_ears(a, sc.square_boundary())
        assert sc.chari_h(first, ears, d) == h


@pytest.mark.parametrize("a", [(0, 1), (1, 2), (1, 1, 1)])
def test_construct_rejects(a):
    with pytest.raises(ValidationError):
        sc.construct_from_sum_of_m(a, sc.square_boundary())


@pytest.mark.parametrize(
    "n,facets",
    [(3, []), (3, [[]]), (3, [[1, 4]]), (4, [[1, 2], [2, 3]]), (0, [[1]])],
)
def test_validate_errors(n, facets):
    with pytest.raises(ValidationError):
        sc.validate(n, facets)


def test_validate_drops_non_maximal_and_sorts():
    cx = sc.validate(3, [[2, 1], [1], [3, 2]])
    assert cx.facets == ((1, 2), (2, 3))


def test_json_round_trip():
    cx = sc.theta_graph()
    assert sc.from_json(cx.to_json()) == cx
    with pytest.raises(ValidationError):
        sc.from_json({"facets": [[1]]})


def test_generator_dispatch():
    assert sc.h_vector(sc.generator("cross-polytope-boundary", 2)) == (1, 2, 1)
    with pytest.raises(ValidationError):
        sc.generator("nope")
    with pytest.raises(ValidationError):
        sc.generator("discrete", 1, 2)
