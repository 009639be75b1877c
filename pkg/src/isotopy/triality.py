"""Related triples: isometries (t1, t2, t3) with t1(xy) = conj(t2(conj x)) conj(t3(conj y)).

Functions take an ``algebra`` argument which may be an ``OctonionAlgebra``
or an ``Isotope``; either provides a structure tensor, a unit, a
conjugation matrix and a norm form.  Matrices may carry a leading batch
shape, in which case predicates return boolean arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotIsomorphism, NotRelated, NotUnitNorm
from .isotope import Isotope, check_isomorphism, pullback_structure, push_structure
from .octonion import DIM


def _eye(algebra):
    return algebra.ring.eye(DIM)


def _isometry_mask(algebra, t):
    """Whether each t (..., 8, 8) preserves the norm of ``algebra``."""
    r = algebra.ring
    u = algebra.norm_form.upper
    m = r.reduce(np.swapaxes(t, -1, -2) @ u @ t)
    diag_ok = np.all(np.diagonal(m, axis1=-2, axis2=-1) == np.diagonal(u), axis=-1)
    pol = r.reduce(m + np.swapaxes(m, -1, -2))
    iu = np.triu_indices(DIM, 1)
    off_ok = np.all(pol[..., iu[0], iu[1]] == algebra.norm_form.polar_matrix[iu], axis=-1)
    return diag_ok & off_ok


def relation_mask(algebra, t1, t2, t3):
    """The triality relation on all 64 basis pairs (complete by bilinearity)."""
    r = algebra.ring
    k = algebra.conj_matrix
    g2 = r.reduce(k @ t2 @ k)
    g3 = r.reduce(k @ t3 @ k)
    lhs = push_structure(r, t1, algebra.structure)
    rhs = pullback_structure(r, algebra.structure, g2, g3)
    return np.all(lhs == rhs, axis=(-3, -2, -1))


def related_mask(algebra, t1, t2, t3):
    ok = relation_mask(algebra, t1, t2, t3)
    for t in (t1, t2, t3):
        ok = ok & _isometry_mask(algebra, t)
    return ok


def is_related(algebra, t1, t2, t3):
    """Isometry of each t_i plus the triality relation."""
    return bool(np.all(related_mask(algebra, t1, t2, t3)))


def delta_tensor(algebra):
    """D[i, j, k] = b(e_i, conj(e_j) conj(e_k))."""
    r = algebra.ring
    k = algebra.conj_matrix
    prods = pullback_structure(r, algebra.structure, k, k)
    return r.reduce(np.einsum("il,jkl->ijk", algebra.norm_form.polar_matrix, prods))


def delta_mask(algebra, t1, t2, t3):
    """Whether the trilinear form b(w, conj(x) conj(y)) is invariant under (t1, t2, t3).

    Trilinearity makes the 512 basis triples a complete check.
    """
    r = algebra.ring
    d = delta_tensor(algebra)
    moved = r.reduce(np.einsum("...ai,abc->...ibc", t1, d))
    moved = r.reduce(np.einsum("...bj,...ibc->...ijc", t2, moved))
    moved = r.reduce(np.einsum("...ck,...ijc->...ijk", t3, moved))
    return np.all(moved == d, axis=(-3, -2, -1))


@dataclass(frozen=True)
class RelatedTriple:
    t1: np.ndarray
    t2: np.ndarray
    t3: np.ndarray
    algebra: object

    @property
    def ring(self):
        return self.algebra.ring

    def components(self):
        return self.t1, self.t2, self.t3

    def is_related(self):
        return is_related(self.algebra, self.t1, self.t2, self.t3)

    def rotate(self):
        return RelatedTriple(self.t2, self.t3, self.t1, self.algebra)

    def __mul__(self, other):
        if other.algebra != self.algebra:
            raise ValueError("triples over different algebras")
        mm = self.ring.matmul
        return RelatedTriple(mm(self.t1, other.t1), mm(self.t2, other.t2), mm(self.t3, other.t3), self.algebra)

    def inverse(self):
        """Isometries are inverted through the polar Gram matrix: G^{-1} t^T G."""
        r = self.ring
        g = self.algebra.norm_form.polar_matrix
        ginv = _gram_inverse(self.algebra)
        return RelatedTriple(*(r.reduce(ginv @ np.swapaxes(t, -1, -2) @ g) for t in self.components()), self.algebra)

    def pi(self):
        """(t3(1), t2(1))."""
        r = self.ring
        u = self.algebra.unit
        return r.reduce(self.t3 @ u), r.reduce(self.t2 @ u)

    def equals(self, other):
        r = self.ring
        return all(r.array_equal(a, b) for a, b in zip(self.components(), other.components()))

    def to_json(self):
        return {name: linalg.format_matrix(self.ring, t) for name, t in zip(("t1", "t2", "t3"), self.components())}

    @classmethod
    def from_json(cls, algebra, data):
        return cls(*(linalg.parse_matrix(algebra.ring, data[k]) for k in ("t1", "t2", "t3")), algebra)


def _gram_inverse(algebra):
    cache = getattr(algebra, "_gram_inverse_cache", None)
    if cache is None:
        cache = linalg.inverse(algebra.ring, algebra.norm_form.polar_matrix)
        try:
            algebra._gram_inverse_cache = cache
        except AttributeError:
            pass
    return cache


def identity_triple(algebra):
    e = _eye(algebra)
    return RelatedTriple(e, e.copy(), e.copy(), algebra)


def kernel_triple(algebra, eta):
    """(I, eta I, eta I) for a scalar eta with eta^2 = 1."""
    r = algebra.ring
    eta = r(eta)
    if not r.eq(r.mul(eta, eta), r.one):
        raise ValueError("eta must square to 1")
    e = _eye(algebra)
    return RelatedTriple(e, r.scale(eta, e), r.scale(eta, e), algebra)


def basic_triple(algebra, c):
    """(B_c, R_conj(c), L_conj(c)) for q(c) = 1."""
    r = algebra.ring
    n = algebra.norm(c)
    if not bool(np.all(np.asarray(n) == r.one)):
        raise NotUnitNorm("basic triples need an element of norm 1")
    cbar = algebra.conj(c)
    return RelatedTriple(algebra.bimul(c), algebra.right_mul(cbar), algebra.left_mul(cbar), algebra)


def is_automorphism(algebra, t):
    r = algebra.ring
    lhs = push_structure(r, t, algebra.structure)
    rhs = pullback_structure(r, algebra.structure, t, t)
    return bool(np.all(lhs == rhs))


def is_automorphism_triple(algebra, t):
    """(t, t, t) is related iff t is an automorphism; both tests are run and must agree."""
    related = is_related(algebra, t, t, t)
    direct = is_automorphism(algebra, t) and bool(np.all(_isometry_mask(algebra, t)))
    if related != direct:
        raise AssertionError("triality test and direct multiplicativity disagree")
    return related


def triple_from_iso(C, f, a, b):
    """(f, K R_a f K, K L_b f K) for an isomorphism f: C -> C^{a,b}; its pi is (a, b)."""
    r = C.ring
    if not np.all(check_isomorphism(f, C, Isotope(C, a, b))):
        raise NotIsomorphism("f is not an isomorphism C -> C^{a,b}")
    k = C.conj_matrix
    t2 = r.reduce(k @ C.right_mul(a) @ f @ k)
    t3 = r.reduce(k @ C.left_mul(b) @ f @ k)
    return RelatedTriple(f, t2, t3, C)


def iso_from_triple(t: RelatedTriple):
    """(a, b, t1) with (a, b) = pi(t); t1 is checked to be an isomorphism C -> C^{a,b}."""
    if not t.is_related():
        raise NotRelated("triple is not related")
    a, b = t.pi()
    if not np.all(check_isomorphism(t.t1, t.algebra, Isotope(t.algebra, a, b))):
        raise AssertionError("first component of a related triple is not an isomorphism onto C^{pi}")
    return a, b, t.t1


def scalar_ratio(C, v, b):
    """eta with v = eta * b (b invertible), or None if v is not a scalar multiple of b."""
    r = C.ring
    w = C.mul(v, C.inv(b))
    i = next(i for i in range(DIM) if r.eq(C.unit[i], r.one))
    eta = w[i]
    if not r.array_equal(w, r.scale(eta, C.unit)):
        return None
    return eta


def iso_sign(C, t, a, b):
    """The eta with t2(1) = eta b and t3(1) = eta a, eta^2 = 1, or None."""
    r = C.ring
    x, y = t.pi()
    eta = scalar_ratio(C, y, b)
    if eta is None or not r.eq(r.mul(eta, eta), r.one):
        return None
    if not r.array_equal(x, r.scale(eta, a)):
        return None
    return eta


def same_up_to_kernel(t, s):
    """eta in {1, -1} with s = t (I, eta I, eta I), or None."""
    r = t.ring
    if not r.array_equal(t.t1, s.t1):
        return None
    for eta in (r.one, r.neg(r.one)):
        if r.array_equal(r.scale(eta, t.t2), s.t2) and r.array_equal(r.scale(eta, t.t3), s.t3):
            return eta
    return None


def pair_action_holds(C, t):
    """pi(rotate(t)) == (conj(y) conj(x), x) where (x, y) = pi(t)."""
    r = C.ring
    x, y = t.pi()
    x2, y2 = t.rotate().pi()
    expected = C.mul(C.conj(y), C.conj(x))
    return r.array_equal(x2, expected) and r.array_equal(y2, x)


def twist_conjugate(C, t: RelatedTriple, a, b):
    """T^{a,b}: (t1, B_b R_a t2 R_abar B_bbar, B_a L_b t3 L_bbar B_abar), from C^{a,b} to C."""
    r = C.ring
    abar, bbar = C.conj(a), C.conj(b)
    B, L, R = C.bimul, C.left_mul, C.right_mul
    t2 = r.reduce(B(b) @ R(a) @ t.t2 @ R(abar) @ B(bbar))
    t3 = r.reduce(B(a) @ L(b) @ t.t3 @ L(bbar) @ B(abar))
    return RelatedTriple(t.t1, t2, t3, C)


def s_triple(C, a, b):
    """s_{a,b} = (R_abar B_bbar, L_abar R_b, B_a L_b)."""
    r = C.ring
    abar, bbar = C.conj(a), C.conj(b)
    return RelatedTriple(
        r.matmul(C.right_mul(abar), C.bimul(bbar)),
        r.matmul(C.left_mul(abar), C.right_mul(b)),
        r.matmul(C.bimul(a), C.left_mul(b)),
        C,
    )


def composition_correspondence(C, t: RelatedTriple):
    """(t1, K t2 K, K t3 K) is an autotopy: t1(xy) = (K t2 K x)(K t3 K y) on basis pairs."""
    r = C.ring
    k = C.conj_matrix
    g2 = r.reduce(k @ t.t2 @ k)
    g3 = r.reduce(k @ t.t3 @ k)
    lhs = push_structure(r, t.t1, C.structure)
    rhs = pullback_structure(r, C.structure, g2, g3)
    return bool(np.all(lhs == rhs))


def random_related_triple(algebra, rng, length=3, sample=None):
    """Product of ``length`` randomly rotated basic triples.

    ``sample(rng)`` draws the norm-one elements; it defaults to the
    algebra's own sampler.
    """
    sample = sample or algebra.random_unit_norm
    t = identity_triple(algebra)
    for _ in range(length):
        s = basic_triple(algebra, sample(rng))
        for _ in range(int(rng.integers(0, 3))):
            s = s.rotate()
        t = s * t
    return t
