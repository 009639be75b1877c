"""Isotopes C^{a,b} of an octonion algebra and isomorphisms between them.

Every algebra-like object here exposes ``ring``, ``unit``, ``structure``
(the (..., 8, 8, 8) tensor with (x y)_k = sum x_i y_j S[i, j, k]) and
``name``.  Parameters may be stacks of elements, in which case structure
tensors, units and maps carry the same leading batch shape and all the
checks below run vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import NotInvertible
from .octonion import DIM, OctonionAlgebra
from .quadform import QuadraticForm, spanning_family


def pullback_structure(ring, structure, f, g):
    """T[..., i, j, k] = sum_pq f[..., p, i] g[..., q, j] S[..., p, q, k].

    This is the structure tensor of (x, y) -> f(x) . g(y).
    """
    n = structure.shape[-1]
    t = np.swapaxes(f, -1, -2) @ structure.reshape(structure.shape[:-3] + (n, n * n))
    t = t.reshape(t.shape[:-1] + (n, n))
    return ring.reduce(np.swapaxes(g, -1, -2)[..., None, :, :] @ t)


def push_structure(ring, f, structure):
    """f applied to every product: T[..., i, j, k] = sum_l f[..., k, l] S[..., i, j, l]."""
    return ring.reduce(structure @ np.swapaxes(f, -1, -2)[..., None, :, :])


class _StructureOps:
    """Multiplication operators read off a structure tensor."""

    def left_mul(self, a):
        return self.ring.reduce(np.einsum("...i,...ijk->...kj", a, self.structure))

    def right_mul(self, a):
        return self.ring.reduce(np.einsum("...j,...ijk->...ki", a, self.structure))

    def bimul(self, a):
        return self.ring.matmul(self.left_mul(a), self.right_mul(a))


class TensorAlgebra(_StructureOps):
    """A (possibly batched) algebra on the coordinate module of an octonion algebra."""

    def __init__(self, ring, structure, unit, name):
        self.ring = ring
        self.structure = structure
        self.unit = unit
        self.name = name

    def mul(self, x, y):
        r = self.ring
        s = self.structure
        return r.reduce(np.einsum("...i,...j,...ijk->...k", x, y, s))

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class Isotope(_StructureOps):
    """C^{a,b}: the coordinate module of C with x*y = (xa)(by) and unit (ab)^{-1}."""

    def __init__(self, base: OctonionAlgebra, a, b):
        r = base.ring
        self.base = base
        self.ring = r
        self.a = r.array(a) if not isinstance(a, np.ndarray) else a
        self.b = r.array(b) if not isinstance(b, np.ndarray) else b
        na, nb = base.norm(self.a), base.norm(self.b)
        for label, n in (("a", na), ("b", nb)):
            if not bool(np.all(r.is_unit_array(np.asarray(n)))):
                raise NotInvertible(f"norm of {label} is not a unit", n)
        ab = base.mul(self.a, self.b)
        self.unit = base.inv(ab)
        self.scale = base.norm(ab)
        one = r.one
        self.unit_norm = bool(np.all(np.asarray(na) == one)) and bool(np.all(np.asarray(nb) == one))
        self.batched = self.a.ndim > 1 or self.b.ndim > 1

    @property
    def name(self):
        if self.batched:
            return f"{self.base.name}^(a,b)[batch]"
        f = self.base.format_element
        return f"{self.base.name}^({f(self.a)};{f(self.b)})"

    def __repr__(self):
        return f"Isotope({self.name})"

    def mul(self, x, y):
        if self.batched:
            return self.ring.reduce(np.einsum("...i,...j,...ijk->...k", x, y, self.structure))
        c = self.base
        return c.mul(c.mul(x, self.a), c.mul(self.b, y))

    @cached_property
    def structure(self):
        c = self.base
        return pullback_structure(self.ring, c.structure, c.right_mul(self.a), c.left_mul(self.b))

    def norm(self, x):
        """lambda * q(x) with lambda = q(ab)."""
        return self.ring.reduce(self.base.norm(x) * self.scale)

    @cached_property
    def norm_form(self):
        if self.batched:
            raise ValueError("norm_form of a batched isotope")
        r = self.ring
        return QuadraticForm(r, r.scale(self.scale, self.base.norm_form.upper))

    def conj(self, x):
        """tr'(x) e' - x, where tr' is the polar of the isotope norm against its unit."""
        r = self.ring
        tr = r.reduce(self.base.polar(x, self.unit) * self.scale)
        return r.reduce(np.asarray(tr)[..., None] * self.unit - x)

    @cached_property
    def conj_matrix(self):
        r = self.ring
        return self.conj(r.eye(DIM)).T.copy()

    def inv(self, x):
        r = self.ring
        n = self.norm(x)
        if np.ndim(n):
            return r.reduce(self.conj(x) * r.inv_array(n)[..., None])
        if not r.is_unit(n):
            raise NotInvertible(f"isotope norm {r.format(n)} is not a unit", n)
        return r.scale(r.inv(n), self.conj(x))


def check_isomorphism(f, source, target):
    """Decide whether the matrix f is an algebra isomorphism source -> target.

    Products of basis pairs determine a bilinear multiplication, so
    comparing f(e_i e_j) with f(e_i) f(e_j) for all 64 pairs is complete.
    Returns a boolean (or a boolean array for batched inputs).
    """
    r = source.ring
    lhs = push_structure(r, f, source.structure)
    rhs = pullback_structure(r, target.structure, f, f)
    mult = np.all(lhs == rhs, axis=(-3, -2, -1))
    dets = linalg.det_batch(r, f) if f.ndim > 2 else linalg.det(r, f)
    invertible = r.is_unit_array(np.asarray(dets)) if f.ndim > 2 else r.is_unit(dets)
    ok = np.logical_and(mult, invertible)
    if np.any(ok):
        fu = r.reduce(np.einsum("...kl,...l->...k", f, source.unit))
        unit_ok = np.all(fu == target.unit, axis=-1)
        if np.any(ok & ~unit_ok):
            raise AssertionError("a multiplicative bijection failed to preserve the unit")
    return bool(ok) if np.ndim(ok) == 0 else ok


def is_algebra_isomorphism(f, source, target):
    return bool(np.all(check_isomorphism(f, source, target)))


def failing_pair(f, source, target):
    """First basis pair (i, j) with f(e_i e_j) != f(e_i) f(e_j), or None."""
    r = source.ring
    lhs = push_structure(r, f, source.structure)
    rhs = pullback_structure(r, target.structure, f, f)
    bad = np.argwhere(np.any(lhs != rhs, axis=-1))
    return tuple(int(v) for v in bad[0]) if len(bad) else None


@dataclass
class IsoMap:
    name: str
    matrix: np.ndarray
    source: object
    target: object

    def check(self):
        return check_isomorphism(self.matrix, self.source, self.target)


def isotope_formula_maps(C: OctonionAlgebra, a, b):
    """The ten classical isomorphisms between isotopes determined by a and b."""
    r = C.ring
    one = np.broadcast_to(C.unit, np.broadcast_shapes(np.shape(a), np.shape(b))).copy()
    ainv, binv = C.inv(a), C.inv(b)
    aba = C.mul(C.mul(a, b), a)
    bab = C.mul(C.mul(b, a), b)
    L, R, B = C.left_mul, C.right_mul, C.bimul
    mm = r.matmul
    iso = lambda x, y: Isotope(C, x, y)  # noqa: E731
    ab = iso(a, b)
    b_ainv = C.mul(b, ainv)
    binv_a = C.mul(binv, a)
    maps = [
        IsoMap("L_a: C^{1,aba} -> C^{a,b}", L(a), iso(one, aba), ab),
        IsoMap("R_b: C^{bab,1} -> C^{a,b}", R(b), iso(bab, one), ab),
        IsoMap("R_{b^-1} L_a: C^{1,aba} -> C^{bab,1}", mm(R(binv), L(a)), iso(one, aba), iso(bab, one)),
        IsoMap("L_a: C^{1,a} -> C^{a,a^-1}", L(a), iso(one, a), iso(a, ainv)),
        IsoMap("R_a: C^{a,a^-1} -> C^{a^-1,1}", R(a), iso(a, ainv), iso(ainv, one)),
        IsoMap("B_a: C^{1,a} -> C^{a^-1,1}", B(a), iso(one, a), iso(ainv, one)),
        IsoMap("B_a: C^{a,b} -> C^{1,ba^-1}", B(a), ab, iso(one, b_ainv)),
        IsoMap("B_b: C^{a,b} -> C^{b^-1a,1}", B(b), ab, iso(binv_a, one)),
        IsoMap(
            "B_{ba^-1} B_a: C^{a,b} -> C^{ab^-1,1}",
            mm(B(b_ainv), B(a)),
            ab,
            iso(C.mul(a, binv), one),
        ),
        IsoMap(
            "B_{b^-1a} B_b: C^{a,b} -> C^{1,a^-1b}",
            mm(B(binv_a), B(b)),
            ab,
            iso(one, C.mul(ainv, b)),
        ),
    ]
    return maps


def kps_star(C: OctonionAlgebra, u):
    """The algebra x * y = (x(yu))u^{-1} and R_u as an isomorphism onto C^{u^{-1},1}."""
    r = C.ring
    uinv = C.inv(u)
    eye = r.eye(DIM)
    x = eye[:, None, :]
    y = eye[None, :, :]
    structure = C.mul(C.mul(x, C.mul(y, u)), uinv)
    star = TensorAlgebra(r, structure, C.unit, f"kps({C.name};{C.format_element(u)})")
    witness = C.right_mul(u)
    target = Isotope(C, uinv, C.unit)
    if not is_algebra_isomorphism(witness, star, target):
        raise AssertionError("R_u is not an isomorphism onto C^{u^-1,1}")
    return star, witness, target


def standard_form(C: OctonionAlgebra, a, b):
    """c = a^{-1} b and the isomorphism B_{b^{-1}a} B_b: C^{a,b} -> C^{1,c}."""
    ainv, binv = C.inv(a), C.inv(b)
    c = C.mul(ainv, b)
    witness = C.ring.matmul(C.bimul(C.mul(binv, a)), C.bimul(b))
    return c, witness


def trialitarian_isotope_maps(C: OctonionAlgebra, a, b):
    """Isomorphisms C^{a,b} -> C^{b^-1 a^-1, a} and C^{a,b} -> C^{b, b^-1 a^-1}.

    Both are composites of the classical maps: B_{ba^-1}B_a lands in
    C^{ab^-1,1}, and a(b^-1 a^-1)a = ab^-1 lets R_a finish the first; the
    second is L_b after B_{b^-1 a}B_b.
    """
    r = C.ring
    ainv, binv = C.inv(a), C.inv(b)
    c = C.mul(binv, ainv)
    first = r.matmul(C.right_mul(a), r.matmul(C.bimul(C.mul(b, ainv)), C.bimul(a)))
    second = r.matmul(C.left_mul(b), r.matmul(C.bimul(C.mul(binv, a)), C.bimul(b)))
    source = Isotope(C, a, b)
    return [
        IsoMap("C^{a,b} -> C^{b^-1a^-1,a}", first, source, Isotope(C, c, a)),
        IsoMap("C^{a,b} -> C^{b,b^-1a^-1}", second, source, Isotope(C, b, c)),
    ]


def standard_form_links(C: OctonionAlgebra, a, b):
    """Isomorphisms between the standard forms C^{1,c} of the three trialitarian isotopes.

    Each link is std_target . chain . std_source^{-1}: C^{1,c_source} -> C^{1,c_target}.
    """
    r = C.ring
    c0, w0 = standard_form(C, a, b)
    w0_inv = linalg.inverse(r, w0)
    one = C.unit
    links = []
    for m in trialitarian_isotope_maps(C, a, b):
        ct, wt = standard_form(C, m.target.a, m.target.b)
        f = r.matmul(wt, r.matmul(m.matrix, w0_inv))
        links.append(IsoMap(f"standard form link {m.name}", f, Isotope(C, one, c0), Isotope(C, one, ct)))
    return links


# norm of an isotope -------------------------------------------------------


def satisfies_degree_two_identity(algebra, form):
    """x*x - b(x, e) x + n(x) e = 0 as a polynomial identity, e the unit.

    All three terms are quadratic in x, so checking e_i and e_i + e_j is
    complete.  For a unital algebra whose norm is regular this identity
    determines the norm uniquely.
    """
    r = algebra.ring
    fam = spanning_family(r, DIM)
    sq = algebra.mul(fam, fam)
    tr = form.polar(fam, np.broadcast_to(algebra.unit, fam.shape))
    lhs = r.reduce(sq - tr[:, None] * fam + form.evaluate(fam)[:, None] * algebra.unit)
    return r.is_zero_array(lhs)


def isotope_norm_certified(iso: Isotope, form=None):
    """Check that ``form`` (default lambda*q) is the norm of the isotope.

    The form must take the value 1 on the unit, satisfy the degree-two
    identity and be multiplicative for the isotope product.
    """
    from .quadform import is_composition

    r = iso.ring
    form = form or iso.norm_form
    if not r.eq(form.evaluate(iso.unit), r.one):
        return False
    if not satisfies_degree_two_identity(iso, form):
        return False
    return is_composition(form, form, form, iso.structure)


def norm_by_solving(algebra, x):
    """Over a field: (t, n) with x*x = t x - n e, or None if x is a multiple of e."""
    r = algebra.ring
    m = np.stack([x, r.neg(algebra.unit)], axis=1)
    sol, kern = linalg.solve_linear(r, m, algebra.mul(x, x))
    if kern.shape[0]:
        return None
    return sol[0], sol[1]
