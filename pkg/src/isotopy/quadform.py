"""Quadratic forms on free modules, stored in characteristic-free form.

A form of rank n is an upper-triangular matrix U with
q(x) = sum_{i <= j} U[i, j] x_i x_j.  The polar form is then
b(x, y) = x^T (U + U^T) y, which stays meaningful in characteristic 2
where q cannot be recovered from b.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

from . import linalg
from .errors import UnsupportedRing


class QuadraticForm:
    def __init__(self, ring, upper):
        upper = ring.array(upper) if not isinstance(upper, np.ndarray) else upper
        n = upper.shape[0]
        if upper.shape != (n, n):
            raise ValueError("coefficient matrix must be square")
        # fold any lower-triangular entries onto the upper triangle
        u = ring.zeros((n, n))
        for i in range(n):
            for j in range(n):
                k = (min(i, j), max(i, j))
                u[k] = ring.add(u[k], upper[i, j])
        self.ring = ring
        self.upper = u
        self.rank = n
        self.polar_matrix = ring.reduce(u + u.T)

    def __repr__(self):
        return f"QuadraticForm(rank={self.rank}, ring={self.ring.spec})"

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticForm)
            and self.ring == other.ring
            and self.ring.array_equal(self.upper, other.upper)
        )

    def _check(self, x):
        if x.shape[-1] != self.rank:
            raise ValueError(f"vector of length {x.shape[-1]} for a form of rank {self.rank}")

    def evaluate(self, x):
        """q(x); a stack of vectors (..., n) gives a stack of values."""
        self._check(x)
        r = self.ring
        ux = r.reduce(x @ self.upper.T)
        return r.reduce((ux * x).sum(axis=-1))

    def __call__(self, x):
        return self.evaluate(x)

    def polar(self, x, y):
        self._check(x)
        self._check(y)
        r = self.ring
        return r.reduce((r.reduce(x @ self.polar_matrix) * y).sum(axis=-1))

    def determinant(self):
        return linalg.det(self.ring, self.polar_matrix)

    def is_regular(self):
        return self.ring.is_unit(self.determinant())

    def restrict(self, basis):
        """The form on the span of the rows of ``basis``, in those coordinates."""
        r = self.ring
        m = basis.shape[0]
        gram = r.reduce(r.reduce(basis @ self.polar_matrix) @ basis.T)
        u = r.zeros((m, m))
        for i in range(m):
            u[i, i] = self.evaluate(basis[i])
            for j in range(i + 1, m):
                u[i, j] = gram[i, j]
        return QuadraticForm(r, u)

    def polar_radical(self):
        """Basis (rows) of rad(b) = ker of the polar matrix; fields only."""
        return linalg.kernel(self.ring, self.polar_matrix)

    def radical(self):
        """Basis of rad(q) = {x in rad(b) : q(x) = 0}; fields only.

        Away from characteristic 2 this is rad(b).  In characteristic 2 the
        form is additive on rad(b) with q(cx) = c^2 q(x), so over a perfect
        field its zeros are the kernel of c -> sum c_i sqrt(q(r_i)).
        """
        r = self.ring
        rb = self.polar_radical()
        if r.characteristic != 2 or rb.shape[0] == 0:
            return rb
        if r.order is None:
            raise UnsupportedRing("radical in characteristic 2 needs a finite field")
        half = r.order // 2
        roots = r.array([[r.pow(self.evaluate(v), half) for v in rb]])
        coeffs = linalg.kernel(r, roots)
        if coeffs.shape[0] == 0:
            return r.zeros((0, self.rank))
        return r.reduce(coeffs @ rb)

    def is_nonsingular(self):
        """rad(q_K) = 0 over an algebraic closure K of the (field) base ring."""
        r = self.ring
        if not r.is_field:
            raise UnsupportedRing(f"non-singularity is only decided over fields, not {r.spec}")
        rb = self.polar_radical()
        if rb.shape[0] == 0:
            return True
        if r.characteristic != 2:
            return False
        # over the closure q is the square of a linear functional on rad(b)
        return rb.shape[0] == 1 and not r.is_zero(self.evaluate(rb[0]))

    def to_json(self):
        entries = [
            [i, j, self.ring.format(self.upper[i, j])]
            for i in range(self.rank)
            for j in range(i, self.rank)
            if not self.ring.is_zero(self.upper[i, j])
        ]
        return {"rank": self.rank, "upper": entries}

    @classmethod
    def from_json(cls, ring, data):
        if isinstance(data, str):
            data = json.loads(data)
        n = data["rank"]
        u = ring.zeros((n, n))
        for i, j, c in data["upper"]:
            u[i, j] = ring.add(u[i, j], ring.parse(str(c)))
        return cls(ring, u)


def hyperbolic(ring, n):
    """sum_{i<n} x_i x_{n+i} on R^{2n}."""
    u = ring.zeros((2 * n, 2 * n))
    for i in range(n):
        u[i, n + i] = ring.one
    return QuadraticForm(ring, u)


def diagonal(ring, coeffs):
    u = ring.zeros((len(coeffs), len(coeffs)))
    for i, c in enumerate(coeffs):
        u[i, i] = ring(c)
    return QuadraticForm(ring, u)


def is_isometry(q1, q2, f):
    """Whether x -> f x carries q1 onto q2 (columns of f are images of basis vectors).

    Agreement on basis vectors and on polar values of basis pairs determines
    a quadratic form, so this is exact.  Invertibility of f is automatic when
    q1 is regular; otherwise it is checked and NotInvertible is raised.
    """
    r = q1.ring
    n = q1.rank
    if f.shape != (n, n) or q2.rank != n:
        raise ValueError("dimension mismatch")
    m = r.reduce(r.reduce(f.T @ q2.upper) @ f)
    pulled = r.reduce(m + m.T)
    for i in range(n):
        if not r.eq(m[i, i], q1.upper[i, i]):
            return False
        for j in range(i + 1, n):
            if not r.eq(pulled[i, j], q1.polar_matrix[i, j]):
                return False
    if not q1.is_regular():
        linalg.inverse(r, f)
    return True


def spanning_family(ring, n):
    """e_i and e_i + e_j (i < j) as rows.

    A quadratic form vanishing on these vectors is identically zero, so a
    biquadratic identity holds as a polynomial identity iff it holds on all
    pairs drawn from this family.
    """
    rows = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        rows.append(v)
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i] = v[j] = 1
        rows.append(v)
    return ring.array(rows)


def bilinear_apply(ring, tensor, x, y):
    """f(x, y)_k = sum_ij tensor[i, j, k] x_i y_j for stacks x (A, n), y (B, n) -> (A, B, n)."""
    n = tensor.shape[0]
    a = ring.reduce(x @ tensor.reshape(n, -1)).reshape(x.shape[0], n, tensor.shape[2])
    return ring.reduce(np.matmul(y[None, :, :], a))


def is_composition(q1, q2, q3, tensor, exhaustive=False):
    """Decide q1(f(x, y)) == q2(x) q3(y) for the bilinear map given by ``tensor``.

    With ``exhaustive=True`` over a finite ring every pair of vectors is also
    tested directly (feasible for F_2 at rank 8).
    """
    r = q1.ring
    n = q2.rank
    if not (q1.rank == q2.rank == q3.rank == n):
        raise ValueError("ranks differ")
    fam = spanning_family(r, n)
    if exhaustive:
        fam = r.array(list(itertools.product(list(r.elements()), repeat=n)))
    vals = bilinear_apply(r, tensor, fam, fam)
    lhs = q1.evaluate(vals)
    rhs = r.reduce(np.multiply.outer(q2.evaluate(fam), q3.evaluate(fam)))
    return r.array_equal(lhs, rhs)
