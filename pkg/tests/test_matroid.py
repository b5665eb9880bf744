import itertools
from math import comb

import pytest

from levelq import matroid as mt, scomplex as sc
from levelq.errors import ValidationError


def test_exchange_axiom():
    assert mt.is_basis_family(4, 2, itertools.combinations(range(1, 5), 2))
    assert not mt.is_basis_family(4, 2, [(1, 2), (3, 4)])
    assert mt.is_basis_family(3, 3, [(1, 2, 3)])
    assert not mt.is_basis_family(3, 2, [])
    assert not mt.is_basis_family(3, 2, [(1, 2, 3)])


def test_invalid_matroid_rejected():
    with pytest.raises(ValidationError):
        mt.make(4, 2, [(1, 2), (3, 4)])


@pytest.mark.parametrize("r,n", [(2, 4), (3, 5), (2, 5), (3, 6), (1, 3)])
def test_uniform_closed_form(r, n):
    h, cx = mt.independence_h(mt.uniform(r, n))
    assert h == mt.uniform_h_closed_form(r, n)
    assert sum(h) == comb(n, r)
    # direct face count
    assert sc.f_vector(cx) == tuple(comb(n, k) for k in range(r + 1))


def test_free_matroid():
    m = mt.make(3, 3, [(1, 2, 3)])
    assert mt.independence_h(m)[0] == (1, 0, 0, 0)
    assert not mt.is_coloop_free(m) and mt.coloops(m) == {1, 2, 3}


def test_loops_are_dropped():
    m = mt.make(4, 1, [(1,), (2,)])
    cx = mt.independence_complex(m)
    assert cx.n == 2


def test_search_ultralog_witness():
    m = mt.search_h(6, 4, (1, 2, 2, 2, 2))
    assert m is not None and len(m.bases) == 9
    assert mt.is_coloop_free(m)
    h, cx = mt.independence_h(m)
    assert h == (1, 2, 2, 2, 2) and sc.is_doubly_cm(cx)
    # lexicographically first: no earlier family of 9 bases works
    pool = list(itertools.combinations(range(1, 7), 4))
    for fam in itertools.combinations(pool, 9):
        if fam == m.bases:
            break
        if mt.is_basis_family(6, 4, fam):
            mm = mt.Matroid(6, 4, fam)
            assert not mt.is_coloop_free(mm) or mt.independence_h(mm)[0] != (1, 2, 2, 2, 2)


def test_search_small():
    assert mt.search_h(4, 2, (1, 2, 3)) == mt.uniform(2, 4)
    assert mt.search_h(3, 2, (1, 0, 7)) is None


def test_search_limits():
    with pytest.raises(ValidationError):
        mt.search_h(8, 4, (1, 1, 1, 1, 1))
    with pytest.raises(ValidationError):
        mt.search_h(6, 4, (1, 2, 2))


def test_json_round_trip():
    m = mt.uniform(2, 4)
    assert mt.from_json(m.to_json()) == m
