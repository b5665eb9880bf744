import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from levelq import ff
from levelq.errors import ValidationError

SMALL_FIELDS = [(2, 1), (3, 1), (7, 1), (2, 4), (3, 3), (5, 2), (2, 8)]


def brute_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(coeffs) - 1
    for k in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            div = list(low) + [1]
            rem = list(coeffs)
            for shift in range(deg - k, -1, -1):
                c = rem[shift + k]
                if c:
                    for i, dv in enumerate(div):
                        rem[shift + i] = (rem[shift + i] - c * dv) % p
            if not any(rem):
                return False
    return True


def span_size(field, a):
    """Number of distinct vectors in the row space, by enumeration."""
    rows = [tuple(int(x) for x in r) for r in a]
    seen = set()
    for coeffs in itertools.product(range(field.order), repeat=len(rows)):
        v = np.zeros(a.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = field.add(v, field.mul(c, np.array(r)))
        seen.add(tuple(int(x) for x in v))
    return len(seen)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (2, 8)])
def test_modulus_is_irreducible_by_trial_division(p, m):
    f = ff.first_irreducible(p, m)
    assert len(f) == m + 1 and f[-1] == 1
    assert brute_irreducible(f, p)


@pytest.mark.parametrize("p,m", [(2, 4), (3, 2), (2, 6)])
def test_rabin_matches_trial_division_on_all_monic(p, m):
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        assert ff.is_irreducible(f, p) == brute_irreducible(f, p)


def test_gf2_16_modulus_is_smallest_irreducible():
    f = ff.first_irreducible(2, 16)
    assert f == (1, 1, 0, 1, 0, 1) + (0,) * 10 + (1,)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, m):
    F = ff.field_create(p, m)
    a = np.arange(F.order)
    x, y = np.meshgrid(a, a)
    s, prod = F.add(x, y), F.mul(x, y)
    assert np.all(s == s.T) and np.all(prod == prod.T)
    assert np.all(F.add(a, 0) == a) and np.all(F.mul(a, 1) == a)
    assert np.all(F.add(a, F.neg(a)) == 0)
    nz = a[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    # the multiplicative group is cyclic of order q-1
    assert np.all(F.power(nz, F.order - 1) == 1)


@pytest.mark.parametrize("p,m", [(2, 8), (3, 4), (5, 3), (2, 12)])
def test_table_and_digit_backends_agree(p, m):
    t = ff.Field(p, m, use_tables=True)
    d = ff.Field(p, m, use_tables=False)
    rng = np.random.default_rng(1)
    x, y = t.random(rng, 500), t.random(rng, 500)
    assert np.all(t.add(x, y) == d.add(x, y))
    assert np.all(t.mul(x, y) == d.mul(x, y))
    nz = x[x != 0]
    assert np.all(t.inv(nz) == d.inv(nz))


@given(st.data())
def test_distributivity_gf2_16(data):
    F = ff.field_create(2, 16)
    ints = st.integers(0, F.order - 1)
    a, b, c = data.draw(ints), data.draw(ints), data.draw(ints)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@given(st.data())
def test_distributivity_gf3_10(data):
    F = ff.field_create(3, 10)
    ints = st.integers(0, F.order - 1)
    a, b, c = data.draw(ints), data.draw(ints), data.draw(ints)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ff.field_create(2, 16).inv(0)


@pytest.mark.parametrize("p,m", [(1, 1), (4, 1), (2, 0), (2, 70)])
def test_invalid_fields(p, m):
    with pytest.raises(ValidationError):
        ff.Field(p, m)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (2, 2)])
@given(seed=st.integers(0, 10**6))
def test_rank_matches_row_space_size(p, m, seed):
    F = ff.field_create(p, m)
    rng = np.random.default_rng(seed)
    rows = int(rng.integers(1, 4))
    a = F.random(rng, (rows, int(rng.integers(1, 5))))
    if rng.random() < 0.3:
        a[-1] = a[0]
    assert F.order ** ff.rank(F, a) == span_size(F, a)


@pytest.mark.parametrize("p,m", [(2, 16), (3, 10), (7, 1)])
def test_kernel_solve_and_rank_consistent(p, m):
    F = ff.field_create(p, m)
    rng = np.random.default_rng(5)
    for _ in range(10):
        r, c, k = rng.integers(1, 7, size=3)
        # product of random factors has rank <= k
        a = F.matmul(F.random(rng, (r, k)), F.random(rng, (k, c)))
        rk = ff.rank(F, a)
        assert rk <= min(r, c, k)
        ker = ff.kernel_basis(F, a)
        assert ker.shape == (c, c - rk)
        assert not np.any(F.matmul(a, ker))
        x = F.random(rng, c)
        b = F.matmul(a, x[:, None])[:, 0]
        sol = ff.solve(F, a, b)
        assert sol is not None and np.all(F.matmul(a, sol[:, None])[:, 0] == b)


def test_solve_reports_inconsistency():
    F = ff.field_create(2, 16)
    a = F.asarray([[1, 1], [1, 1]])
    assert ff.solve(F, a, F.asarray([1, 2])) is None


def leibniz_det(F, a):
    n = a.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term = F.mul(term, a[i, perm[i]])
        total = F.add(total, term if sign > 0 else F.neg(term))
    return int(total)


@pytest.mark.parametrize("p,m", [(2, 16), (3, 10), (5, 1), (3, 2)])
def test_det_matches_leibniz(p, m):
    F = ff.field_create(p, m)
    rng = np.random.default_rng(3)
    for n in (1, 2, 3, 4):
        a = F.random(rng, (n, n))
        assert ff.det(F, a) == leibniz_det(F, a)


def test_field_cache_and_hex():
    assert ff.field_create(2, 16) is ff.field_create(2, 16)
    assert ff.field_create(2, 16).hex(0xD9C2) == "0xd9c2"
