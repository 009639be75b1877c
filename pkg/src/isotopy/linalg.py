"""Dense exact linear algebra over a ring context.

Fields get ordinary Gaussian elimination, integral domains get the
fraction-free (Bareiss) variants, and every other commutative ring falls
back to the division-free Berkowitz characteristic polynomial, from which
both the determinant and the adjugate follow.
"""

from __future__ import annotations

import numpy as np

from .errors import NoSolution, NotInvertible, UnsupportedRing


def _rows(m):
    return [list(r) for r in m.tolist()]


def _check_square(m):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")


def charpoly(ring, m):
    """Coefficients of det(x*I - m), highest degree first, without division."""
    _check_square(m)
    a = _rows(m)
    n = len(a)
    poly = [ring.one]
    for k in range(1, n + 1):
        diag = a[k - 1][k - 1]
        row = a[k - 1][: k - 1]
        col = [a[i][k - 1] for i in range(k - 1)]
        toeplitz = [ring.one, ring.neg(diag)]
        v = col
        for _ in range(k - 1):
            toeplitz.append(ring.neg(_dot(ring, row, v)))
            v = [_dot(ring, a[i][: k - 1], v) for i in range(k - 1)]
        new = []
        for i in range(k + 1):
            s = ring.zero
            for j in range(k):
                if 0 <= i - j < len(toeplitz):
                    s = ring.add(s, ring.mul(toeplitz[i - j], poly[j]))
            new.append(s)
        poly = new
    return poly


def _dot(ring, u, v):
    s = ring.zero
    for x, y in zip(u, v):
        s = ring.add(s, ring.mul(x, y))
    return s


def _det_gauss(ring, a):
    n = len(a)
    det = ring.one
    for k in range(n):
        piv = next((i for i in range(k, n) if not ring.is_zero(a[i][k])), None)
        if piv is None:
            return ring.zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = ring.neg(det)
        det = ring.mul(det, a[k][k])
        inv = ring.inv(a[k][k])
        for i in range(k + 1, n):
            if ring.is_zero(a[i][k]):
                continue
            f = ring.mul(a[i][k], inv)
            for j in range(k, n):
                a[i][j] = ring.sub(a[i][j], ring.mul(f, a[k][j]))
    return det


def _det_bareiss(ring, a):
    n = len(a)
    sign = ring.one
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            piv = next((i for i in range(k + 1, n) if not ring.is_zero(a[i][k])), None)
            if piv is None:
                return ring.zero
            a[k], a[piv] = a[piv], a[k]
            sign = ring.neg(sign)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(a[i][j], a[k][k]), ring.mul(a[i][k], a[k][j]))
                a[i][j] = ring.exact_div(num, prev)
        prev = a[k][k]
    return ring.mul(sign, a[n - 1][n - 1])


def det(ring, m):
    _check_square(m)
    n = m.shape[0]
    if n == 0:
        return ring.one
    if ring.is_field:
        return _det_gauss(ring, _rows(m))
    if ring.is_domain:
        return _det_bareiss(ring, _rows(m))
    c = charpoly(ring, m)[-1]
    return c if n % 2 == 0 else ring.neg(c)


def adjugate(ring, m):
    """adj(m) = (-1)^(n+1) (m^(n-1) + c1 m^(n-2) + ... + c_(n-1) I) by Cayley-Hamilton."""
    _check_square(m)
    n = m.shape[0]
    if n == 0:
        return ring.zeros((0, 0))
    c = charpoly(ring, m)
    acc = ring.eye(n)
    for k in range(1, n):
        acc = ring.add(ring.matmul(acc, m), ring.scale(c[k], ring.eye(n)))
    return acc if n % 2 == 1 else ring.neg(acc)


def _inverse_gauss_jordan(ring, m):
    n = m.shape[0]
    a = _rows(m)
    for i in range(n):
        a[i] += [ring.one if j == i else ring.zero for j in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not ring.is_zero(a[i][k])), None)
        if piv is None:
            raise NotInvertible("matrix is singular", ring.zero)
        a[k], a[piv] = a[piv], a[k]
        inv = ring.inv(a[k][k])
        a[k] = [ring.mul(inv, x) for x in a[k]]
        for i in range(n):
            if i == k or ring.is_zero(a[i][k]):
                continue
            f = a[i][k]
            a[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[i], a[k])]
    return ring.array([row[n:] for row in a])


def _inverse_fraction_free(ring, m):
    # Bareiss-style Gauss-Jordan: at the end every diagonal entry equals
    # +-det(m) and the right half is +-det(m) * m^-1.
    n = m.shape[0]
    a = _rows(m)
    for i in range(n):
        a[i] += [ring.one if j == i else ring.zero for j in range(n)]
    prev = ring.one
    sign = ring.one
    for k in range(n):
        piv = next((i for i in range(k, n) if not ring.is_zero(a[i][k])), None)
        if piv is None:
            raise NotInvertible("matrix is singular", ring.zero)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = ring.neg(sign)
        for i in range(n):
            if i == k:
                continue
            a[i] = [
                ring.exact_div(ring.sub(ring.mul(a[k][k], x), ring.mul(a[i][k], y)), prev)
                for x, y in zip(a[i], a[k])
            ]
        prev = a[k][k]
    d = a[0][0]
    if not ring.is_unit(d):
        raise NotInvertible(f"determinant {ring.format(ring.mul(sign, d))} is not a unit", ring.mul(sign, d))
    inv = ring.inv(d)
    return ring.array([[ring.mul(inv, x) for x in row[n:]] for row in a])


def inverse(ring, m):
    """Inverse of a square matrix; raises NotInvertible(det) when det is not a unit."""
    _check_square(m)
    n = m.shape[0]
    if ring.is_field:
        return _inverse_gauss_jordan(ring, m)
    if ring.is_domain:
        return _inverse_fraction_free(ring, m)
    d = det(ring, m)
    if not ring.is_unit(d):
        raise NotInvertible(f"determinant {ring.format(d)} is not a unit", d)
    if n == 0:
        return ring.zeros((0, 0))
    return ring.scale(ring.inv(d), adjugate(ring, m))


def is_invertible(ring, m):
    return ring.is_unit(det(ring, m))


def _require_field(ring):
    if not ring.is_field:
        raise UnsupportedRing(f"{ring.spec} is not a field")


def rref(ring, m):
    """Reduced row echelon form and pivot columns (fields only)."""
    _require_field(ring)
    a = _rows(m)
    rows = len(a)
    cols = m.shape[1] if m.ndim == 2 else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not ring.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ring.inv(a[r][c])
        a[r] = [ring.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and not ring.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = ring.array(a) if a else ring.zeros(m.shape)
    return out.reshape(m.shape), pivots


def rank(ring, m):
    return len(rref(ring, m)[1])


def kernel(ring, m):
    """Basis of {x : m x = 0} as the rows of the returned array."""
    reduced, pivots = rref(ring, m)
    n = m.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero] * n
        v[f] = ring.one
        for row, p in enumerate(pivots):
            v[p] = ring.neg(reduced[row, f])
        basis.append(v)
    if not basis:
        return ring.zeros((0, n))
    return ring.array(basis)


def solve_linear(ring, m, rhs):
    """Particular solution of m x = rhs and a kernel basis of m.

    ``rhs`` may be a vector or a matrix of right-hand sides.  Raises
    NoSolution when the system is inconsistent and UnsupportedRing when the
    ring is not a field.
    """
    _require_field(ring)
    vector = rhs.ndim == 1
    b = rhs.reshape(-1, 1) if vector else rhs
    if b.shape[0] != m.shape[0]:
        raise ValueError("row count of m and rhs differ")
    n = m.shape[1]
    aug = np.concatenate([m, b], axis=1)
    reduced, pivots = rref(ring, aug)
    if any(p >= n for p in pivots):
        raise NoSolution("inconsistent linear system")
    x = ring.zeros((n, b.shape[1]))
    for row, p in enumerate(pivots):
        x[p] = reduced[row, n:]
    return (x[:, 0] if vector else x), kernel(ring, m)


def det_batch(ring, m):
    """Determinants of a stack of square matrices (..., n, n).

    Prime fields stored as int64 are eliminated in one vectorized pass; other
    rings loop over the stack.
    """
    lead = m.shape[:-2]
    n = m.shape[-1]
    flat = m.reshape((-1, n, n))
    if not (ring.dtype is np.int64 and ring.is_field):
        out = [det(ring, x) for x in flat]
        arr = np.empty(len(out), dtype=object)
        arr[:] = out
        if ring.dtype is not object:
            arr = arr.astype(ring.dtype)
        return arr.reshape(lead)
    p = ring.n
    inv_table = ring._inverse_table
    a = flat % p
    count = a.shape[0]
    rows = np.arange(count)
    result = np.ones(count, dtype=np.int64)
    for k in range(n):
        nonzero = a[:, k:, k] != 0
        has = nonzero.any(axis=1)
        piv = nonzero.argmax(axis=1) + k
        result[~has] = 0
        swap = piv != k
        top = a[rows, k].copy()
        a[rows, k] = a[rows, piv]
        a[rows, piv] = top
        result = np.where(swap, -result, result) % p
        pivot = a[rows, k, k]
        result = result * pivot % p
        factors = a[:, k + 1:, k] * inv_table[pivot][:, None] % p
        a[:, k + 1:, :] = (a[:, k + 1:, :] - factors[:, :, None] * a[:, None, k, :]) % p
    return result.reshape(lead)


def format_matrix(ring, m):
    """Rows as comma-separated scalar strings."""
    return [",".join(ring.format(v) for v in row) for row in m]


def parse_matrix(ring, rows):
    """Inverse of format_matrix; rows may also be lists of scalars."""
    out = []
    for row in rows:
        items = row.split(",") if isinstance(row, str) else row
        out.append([ring.parse(str(v).strip()) for v in items])
    return ring.array(out)
