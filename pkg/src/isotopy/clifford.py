"""The Clifford algebra of the norm, realized as 16x16 matrices on C + C.

alpha(x) = [[0, L_conj(x) K], [K L_x, 0]] squares to q(x) I, so it extends to
an isomorphism from Cl(C, q) onto End(C + C); even elements are the
block-diagonal matrices diag(u3, u2).  Spin elements u give related triples
(u1, u2, u3) where u1 is conjugation x -> u x u^{-1} on C.
"""

from __future__ import annotations

from .errors import NotRelated, NotSpin
from .octonion import DIM
from .triality import RelatedTriple, is_related

N = 2 * DIM


def alpha(C, x):
    r = C.ring
    k = C.conj_matrix
    m = r.zeros((N, N))
    m[:DIM, DIM:] = r.matmul(C.left_mul(C.conj(x)), k)
    m[DIM:, :DIM] = r.matmul(k, C.left_mul(x))
    return m


def _gram(C):
    r = C.ring
    g = C.norm_form.polar_matrix
    m = r.zeros((N, N))
    m[:DIM, :DIM] = g
    m[DIM:, DIM:] = g
    return m


def _gram_inverse(C):
    from .triality import _gram_inverse as gi

    r = C.ring
    g = gi(C)
    m = r.zeros((N, N))
    m[:DIM, :DIM] = g
    m[DIM:, DIM:] = g
    return m


def sigma(C, m):
    """Adjoint involution of the polar form of q + q: G^{-1} m^T G."""
    r = C.ring
    return r.reduce(_gram_inverse(C) @ m.T @ _gram(C))


def is_even(C, u):
    r = C.ring
    return r.is_zero_array(u[:DIM, DIM:]) and r.is_zero_array(u[DIM:, :DIM])


def _conjugate_vector(C, u, uinv, x):
    """z with u alpha(x) u^{-1} = alpha(z) if it exists, else None."""
    r = C.ring
    m = r.reduce(u @ alpha(C, x) @ uinv)
    z = C.conj(r.reduce(m[:DIM, DIM:] @ C.unit))
    if not r.array_equal(m, alpha(C, z)):
        return None
    return z


def is_spin(C, u):
    """Even, u sigma(u) = 1, and conjugation by u preserves alpha(C)."""
    r = C.ring
    if u.shape != (N, N) or not is_even(C, u):
        return False
    s = sigma(C, u)
    if not r.array_equal(r.matmul(u, s), r.eye(N)):
        return False
    for i in range(DIM):
        if _conjugate_vector(C, u, s, C.basis(i)) is None:
            return False
    return True


def triple_from_spin(C, u):
    """(u1, u2, u3): u1 is conjugation by u on C, diag(u3, u2) = u."""
    r = C.ring
    if not is_spin(C, u):
        raise NotSpin("not an element of the spin group")
    s = sigma(C, u)
    u1 = r.zeros((DIM, DIM))
    for i in range(DIM):
        u1[:, i] = _conjugate_vector(C, u, s, C.basis(i))
    return RelatedTriple(u1, u[DIM:, DIM:].copy(), u[:DIM, :DIM].copy(), C)


def spin_from_triple(t):
    """diag(t3, t2); checked to be spin and to map back to t."""
    C = t.algebra
    r = C.ring
    if not is_related(C, t.t1, t.t2, t.t3):
        raise NotRelated("triple is not related")
    u = r.zeros((N, N))
    u[:DIM, :DIM] = t.t3
    u[DIM:, DIM:] = t.t2
    if not triple_from_spin(C, u).equals(t):
        raise AssertionError("spin element does not map back to its triple")
    return u


def spin_generator(C, x, y):
    """alpha(x) alpha(y); a spin element when q(x) q(y) = 1."""
    return C.ring.matmul(alpha(C, x), alpha(C, y))


def scalar_spin(C, eta):
    r = C.ring
    return r.scale(r(eta), r.eye(N))
