"""Arithmetic over GF(p^m) and dense linear algebra on numpy arrays.

Elements are encoded as integers ``0 <= a < p**m``: base-``p`` digit ``i``
of ``a`` is the coefficient of ``x**i`` in the residue modulo the field's
defining polynomial.  Under this encoding the prime subfield is exactly
``{0, ..., p-1}``, so integers mod ``p`` embed without conversion.

All operations are vectorized over ``numpy.int64`` arrays and never mutate
their inputs.
"""

from __future__ import annotations

import functools
from typing import Optional, Sequence

import numpy as np

from .errors import InconsistencyError, ValidationError

TABLE_LIMIT = 1 << 20
MAX_ORDER = 1 << 62


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p) as coefficient lists, lowest degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        t = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - t * c) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, f, p)


def _poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (coefficients lowest first)."""
    f = list(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**m, f, p), x, p):
        return False
    for r in _prime_factors(m):
        h = _poly_sub(_poly_powmod(x, p ** (m // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def _digits(value: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        value, d = divmod(value, p)
        out.append(d)
    return out


def _from_digits(digits: Sequence[int], p: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * p + int(d)
    return v


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``m`` with the smallest integer encoding."""
    for low in range(p**m):
        f = _digits(low, p, m) + [1]
        if f[0] == 0 and m > 1:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise InconsistencyError(f"no irreducible polynomial of degree {m} over GF({p})")


# ---------------------------------------------------------------------------


class Field:
    """The finite field GF(p^m).

    Use :func:`field_create` rather than instantiating directly so that equal
    parameters share one (cached) object.
    """

    def __init__(self, p: int, m: int = 1, *, use_tables: Optional[bool] = None):
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise ValidationError(f"characteristic {p!r} is not prime")
        if not 1 <= m <= 32:
            raise ValidationError(f"extension degree {m} outside 1..32")
        p, m = int(p), int(m)
        if m == 1 and p >= 1 << 31:
            raise ValidationError(f"prime {p} too large (limit 2^31)")
        if p**m >= MAX_ORDER:
            raise ValidationError(f"field order {p}^{m} too large (limit 2^62)")
        self.p = p
        self.m = m
        self.order = p**m
        self.modulus = first_irreducible(p, m) if m > 1 else (0, 1)
        if m == 1:
            self._kind = "prime"
        elif use_tables is False or (use_tables is None and self.order > TABLE_LIMIT):
            self._kind = "poly"
            self._mod_low = np.array(self.modulus[:-1], dtype=np.int64)
            self._powers = np.array([p**i for i in range(m)], dtype=np.int64)
        else:
            self._kind = "table"
            self._build_tables()

    # -- construction -------------------------------------------------------

    def _build_tables(self):
        p, m, q = self.p, self.m, self.order
        f = list(self.modulus)
        factors = _prime_factors(q - 1)
        gen = None
        for cand in range(p, q):
            g = _digits(cand, p, m)
            if all(_poly_powmod(_trim(list(g)), (q - 1) // r, f, p) != [1] for r in factors):
                gen = _trim(g)
                break
        if gen is None:
            raise InconsistencyError(f"no primitive element found in GF({p}^{m})")
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        v = [1] + [0] * (m - 1)
        low = f[:-1]
        for k in range(q - 1):
            exp[k] = _from_digits(v, p)
            # v <- v * gen mod f, with v kept as a length-m digit list
            acc = [0] * m
            for s, c in enumerate(gen):
                if not c:
                    continue
                w = v
                for _ in range(s):
                    top = w[-1]
                    w = [0] + w[:-1]
                    if top:
                        w = [(wi - top * li) % p for wi, li in zip(w, low)]
                acc = [(a + c * wi) % p for a, wi in zip(acc, w)]
            v = acc
        if len(set(exp[: q - 1].tolist())) != q - 1:
            raise InconsistencyError("generator table is not a permutation")
        exp[q - 1 :] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1, dtype=np.int64)
        self._exp = exp
        self._log = log
        self._generator = _from_digits(gen, p)
        if p != 2:
            e = exp[: q - 1]
            d0 = e % p
            one_plus = e - d0 + (d0 + 1) % p
            self._zech = np.where(one_plus == 0, -1, log[one_plus])

    # -- identity -----------------------------------------------------------

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    def hex(self, a) -> str:
        return f"{int(a):#x}"

    # -- element arithmetic -------------------------------------------------

    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.order, size=size, dtype=np.int64)

    def add(self, a, b):
        a, b = self.asarray(a), self.asarray(b)
        if self.p == 2:
            return a ^ b
        if self._kind == "prime":
            return (a + b) % self.p
        if self._kind == "poly":
            return self._from_d((self._to_d(a) + self._to_d(b)) % self.p)
        a, b = np.broadcast_arrays(a, b)
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.order - 1)]
        out = np.where(z < 0, 0, self._exp[la + np.maximum(z, 0)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def neg(self, a):
        a = self.asarray(a)
        if self.p == 2:
            return a.copy()
        if self._kind == "prime":
            return (-a) % self.p
        if self._kind == "poly":
            return self._from_d((-self._to_d(a)) % self.p)
        return self.mul(a, self.p - 1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = self.asarray(a), self.asarray(b)
        if self._kind == "prime":
            return (a * b) % self.p
        if self._kind == "poly":
            return self._from_d(self._mul_d(self._to_d(a), self._to_d(b)))
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = self.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        if self._kind == "table":
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.power(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = self.asarray(a)
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def sum(self, a, axis=None):
        """Field sum along ``axis`` (all entries when ``axis`` is None)."""
        a = self.asarray(a)
        if axis is None:
            a = a.reshape(-1)
            axis = 0
        if self.p == 2:
            if a.shape[axis] == 0:
                return np.zeros(np.delete(a.shape, axis), dtype=np.int64)
            return np.bitwise_xor.reduce(a, axis=axis)
        if self._kind == "prime":
            return np.sum(a % self.p, axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        if a.shape[0] == 0:
            return np.zeros(a.shape[1:], dtype=np.int64)
        while a.shape[0] > 1:
            half = a.shape[0] // 2
            paired = self.add(a[:half], a[half : 2 * half])
            a = np.concatenate([paired, a[2 * half :]]) if a.shape[0] % 2 else paired
        return a[0]

    def matmul(self, a, b):
        a, b = self.asarray(a), self.asarray(b)
        if a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return self.sum(self.mul(a[:, :, None], b[None, :, :]), axis=1)

    # -- digit-array backend for fields too large for log tables ------------

    def _to_d(self, a):
        d = np.empty(a.shape + (self.m,), dtype=np.int64)
        v = a.copy()
        for i in range(self.m):
            d[..., i] = v % self.p
            v //= self.p
        return d

    def _from_d(self, d):
        return np.sum(d * self._powers, axis=-1)

    def _mul_d(self, x, y):
        p, m = self.p, self.m
        x, y = np.broadcast_arrays(x, y)
        c = np.zeros(x.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            c[..., i : i + m] = (c[..., i : i + m] + x[..., i : i + 1] * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            t = c[..., k : k + 1]
            c[..., k - m : k] = (c[..., k - m : k] - t * self._mod_low) % p
        return c[..., :m]


@functools.lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> Field:
    """Return GF(p^m); repeated calls with the same arguments share one object."""
    return Field(p, m)


# ---------------------------------------------------------------------------
# dense linear algebra


def rref(field: Field, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns of ``a``."""
    r = field.asarray(a).copy()
    if r.ndim != 2:
        raise ValidationError("expected a 2-d matrix")
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = field.mul(r[row], field.inv(r[row, col]))
        factors = r[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            r[hit] = field.sub(r[hit], field.mul(factors[hit, None], r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, pivots


def rank(field: Field, a) -> int:
    a = field.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(field, a)[1])


def kernel_basis(field: Field, a) -> np.ndarray:
    """Columns spanning the right null space of ``a``.

    The basis is the reduced one attached to the free columns of the RREF:
    column ``k`` of the result has a 1 in its free coordinate and zeros in
    every other free coordinate.
    """
    a = field.asarray(a)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return field.identity(ncols)
    r, pivots = rref(field, a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = field.zeros((ncols, len(free)))
    for k, fcol in enumerate(free):
        basis[fcol, k] = 1
        for i, pcol in enumerate(pivots):
            basis[pcol, k] = field.neg(r[i, fcol])
    return basis


def solve(field: Field, a, b) -> Optional[np.ndarray]:
    """Some ``x`` with ``a @ x == b``, or None when the system is inconsistent."""
    a, b = field.asarray(a), field.asarray(b)
    if b.shape != (a.shape[0],):
        raise ValidationError("right-hand side length must equal the row count")
    ncols = a.shape[1]
    r, pivots = rref(field, np.column_stack([a, b]) if a.size else b[:, None])
    if ncols in pivots:
        return None
    x = field.zeros(ncols)
    for i, pcol in enumerate(pivots):
        x[pcol] = r[i, ncols]
    return x


def det(field: Field, a) -> int:
    a = field.asarray(a).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValidationError("determinant of a non-square matrix")
    result = 1
    for col in range(n):
        nz = np.flatnonzero(a[col:, col])
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            result = int(field.neg(result))
        pv = a[col, col]
        result = int(field.mul(result, pv))
        below = a[col + 1 :, col]
        hit = np.flatnonzero(below)
        if hit.size:
            f = field.div(below[hit], pv)
            a[col + 1 + hit] = field.sub(a[col + 1 + hit], field.mul(f[:, None], a[col][None, :]))
    return result
