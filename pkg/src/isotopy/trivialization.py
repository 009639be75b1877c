"""Explicit isomorphisms C -> C^{a, conj(a)} for norm-one a.

Two chain constructions produce isomorphisms from sequences of invertible
elements; the cube, orthogonal and traceless cases are sufficient
conditions built on the second one.  Over fields an orthogonal unit always
exists, so ``field_trivialize`` succeeds for every point of the sphere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import NotFound, NotInvertible, PreconditionFailed, UnsupportedRing
from .isotope import Isotope, is_algebra_isomorphism, pullback_structure, push_structure
from .octonion import DIM
from .triality import RelatedTriple


@dataclass
class IsoWitness:
    map: np.ndarray
    source: object
    target: Isotope
    trace: list = field(default_factory=list)

    def check(self):
        return is_algebra_isomorphism(self.map, self.source, self.target)

    def to_json(self):
        C = self.source
        return {
            "source": C.name,
            "target": {"a": C.format_element(self.target.a), "b": C.format_element(self.target.b)},
            "map": linalg.format_matrix(C.ring, self.map),
            "trace": list(self.trace),
        }


def _witness(C, m, a, trace):
    w = IsoWitness(m, C, Isotope(C, a, C.conj(a)), trace)
    if not w.check():
        raise AssertionError("constructed map is not an isomorphism")
    return w


def _is_one(r, v):
    return r.eq(v, r.one)


def _require_invertible(C, c):
    n = C.norm(c)
    if not C.ring.is_unit(n):
        raise NotInvertible(f"norm {C.ring.format(n)} is not a unit", n)


def tau_plus(C, c, x):
    """c x c^2, bracketed ((c x) c) c; the other bracketings must agree."""
    _require_invertible(C, c)
    r = C.ring
    cx = C.mul(c, x)
    c2 = C.mul(c, c)
    out = C.mul(C.mul(cx, c), c)
    if not (r.array_equal(out, C.mul(cx, c2)) and r.array_equal(out, C.mul(c, C.mul(x, c2)))):
        raise AssertionError("bracketings of c x c^2 disagree")
    return out


def tau_minus(C, c, x):
    """c^{-2} (x c^{-1})."""
    ci = C.inv(c)
    return C.mul(C.mul(ci, ci), C.mul(x, ci))


def tau_plus_inverse(C, c, x):
    """c^{-1} (x c^{-2}), the inverse of tau+."""
    ci = C.inv(c)
    return C.mul(ci, C.mul(x, C.mul(ci, ci)))


def tau_plus_matrix(C, c):
    _require_invertible(C, c)
    return C.ring.matmul(C.right_mul(c), C.right_mul(c), C.left_mul(c))


def tau_minus_matrix(C, c):
    ci = C.inv(c)
    return C.ring.matmul(C.left_mul(C.mul(ci, ci)), C.right_mul(ci))


def lr_matrix(C, c):
    """L_c R_c^{-1} = L_c R_{c^{-1}}."""
    return C.ring.matmul(C.left_mul(c), C.right_mul(C.inv(c)))


def conjug_identity_holds(C, c):
    """L_c R_c^{-1}(conj x conj y) = tau+(conj x) tau-(conj y) = conj(tau- x) conj(tau+ y) on basis pairs."""
    r = C.ring
    k = C.conj_matrix
    tp, tm = tau_plus_matrix(C, c), tau_minus_matrix(C, c)
    lhs = push_structure(r, lr_matrix(C, c), pullback_structure(r, C.structure, k, k))
    mid = pullback_structure(r, C.structure, r.matmul(tp, k), r.matmul(tm, k))
    rhs = pullback_structure(r, C.structure, r.matmul(k, tm), r.matmul(k, tp))
    return bool(np.all(lhs == mid) and np.all(mid == rhs))


def _chain(r, mats):
    out = r.eye(DIM)
    for m in mats:
        out = r.matmul(m, out)
    return out


def bimul_chain_iso(C, cs):
    """B_{conj c_r} ... B_{conj c_1}: C -> C^{a, conj a} when both left chains send 1 to a."""
    r = C.ring
    for c in cs:
        _require_invertible(C, c)
    a = r.reduce(_chain(r, [C.left_mul(c) for c in cs]) @ C.unit)
    abar_chain = r.reduce(_chain(r, [C.left_mul(C.conj(c)) for c in cs]) @ C.unit)
    if not r.array_equal(a, abar_chain) or not _is_one(r, C.norm(a)):
        raise PreconditionFailed(
            "left chains disagree or do not reach the sphere",
            {"L_chain": C.format_element(a), "Lbar_chain": C.format_element(abar_chain)},
        )
    m = _chain(r, [C.bimul(C.conj(c)) for c in cs])
    trace = [f"B_conj(c) with c = {C.format_element(c)}" for c in cs]
    return _witness(C, m, a, trace)


def lr_chain_iso(C, cs):
    """L_{c_r} R_{c_r}^{-1} ... L_{c_1} R_{c_1}^{-1}: C -> C^{a, conj a}, a = tau+ chain of 1."""
    r = C.ring
    a = C.unit
    for c in cs:
        a = tau_plus(C, c, a)
    if not _is_one(r, C.norm(a)):
        raise PreconditionFailed("tau+ chain of 1 is not on the sphere", {"a": C.format_element(a)})
    m = _chain(r, [lr_matrix(C, c) for c in cs])
    trace = [f"L_c R_c^-1 with c = {C.format_element(c)}" for c in cs]
    return _witness(C, m, a, trace)


def tau_triple(C, cs):
    """(L R^{-1} chain, tau- chain, tau+ chain); related when the product of q(c_i)^3 is 1."""
    r = C.ring
    return RelatedTriple(
        _chain(r, [lr_matrix(C, c) for c in cs]),
        _chain(r, [tau_minus_matrix(C, c) for c in cs]),
        _chain(r, [tau_plus_matrix(C, c) for c in cs]),
        C,
    )


def cube_case(C, c):
    """C ~ C^{c^3, conj(c^3)} through L_c R_c^{-1}."""
    return lr_chain_iso(C, [c])


def _sphere_check(C, a):
    r = C.ring
    if not _is_one(r, C.norm(a)):
        raise PreconditionFailed("a is not on the unit sphere", {"norm": r.format(C.norm(a))})


def orthogonal_case(C, a, u):
    """Two-step chain c1 = u^{-1}, c2 = a u for an invertible u orthogonal to 1 and a."""
    r = C.ring
    _sphere_check(C, a)
    details = {
        "norm_u": r.format(C.norm(u)),
        "b(u,1)": r.format(C.polar(u, C.unit)),
        "b(u,a)": r.format(C.polar(u, a)),
    }
    if not r.is_unit(C.norm(u)) or not r.is_zero(C.polar(u, C.unit)) or not r.is_zero(C.polar(u, a)):
        raise PreconditionFailed("u must be invertible and orthogonal to 1 and a", details)
    w = lr_chain_iso(C, [C.inv(u), C.mul(a, u)])
    if not r.array_equal(w.target.a, a):
        raise AssertionError("orthogonal chain did not reach a")
    return w


def traceless_case(C, a):
    """For trace-zero a on the sphere, a = (-a)^3."""
    r = C.ring
    _sphere_check(C, a)
    if not r.is_zero(C.polar(a, C.unit)):
        raise PreconditionFailed("a is not orthogonal to 1", {"b(a,1)": r.format(C.polar(a, C.unit))})
    w = cube_case(C, r.reduce(-a))
    if not r.array_equal(w.target.a, a):
        raise AssertionError("(-a)^3 != a")
    return w


def orthogonal_space(C, a):
    """Rows spanning the common orthogonal of 1 and a (fields only)."""
    r = C.ring
    g = C.norm_form.polar_matrix
    m = r.reduce(np.stack([g @ C.unit, g @ a]))
    return linalg.kernel(r, m)


def _coefficient_sweep(r, k):
    """Nonzero coefficient vectors of length k in a fixed order.

    Finite fields: lexicographic in the ring's element order.  Q: by height
    h = 1, 2, ..., lexicographic in -h..h within each height.
    """
    if r.order is not None:
        elems = list(r.elements())
        for coeffs in itertools.product(elems, repeat=k):
            if any(not r.is_zero(c) for c in coeffs):
                yield coeffs
        return
    h = 1
    while True:
        vals = [r(v) for v in range(-h, h + 1)]
        for coeffs in itertools.product(vals, repeat=k):
            if max(abs(int(c)) for c in coeffs) == h:
                yield coeffs
        h += 1


def find_orthogonal_unit(C, a, limit=None):
    r = C.ring
    basis = orthogonal_space(C, a)
    k = len(basis)
    for n, coeffs in enumerate(_coefficient_sweep(r, k)):
        if limit is not None and n >= limit:
            break
        u = r.reduce(sum(c * row for c, row in zip(coeffs, basis)))
        if r.is_unit(C.norm(u)):
            return u
    return None


def field_trivialize(C, a):
    """An isomorphism C -> C^{a, conj a} for any a on the sphere of an octonion algebra over a field."""
    r = C.ring
    if not r.is_field:
        raise UnsupportedRing(f"{r.spec} is not a field")
    _sphere_check(C, a)
    limit = None if r.order is not None else 10**5
    u = find_orthogonal_unit(C, a, limit)
    if u is None:
        raise NotFound(f"no invertible element orthogonal to 1 and {C.format_element(a)}")
    w = orthogonal_case(C, a, u)
    w.trace.insert(0, f"u = {C.format_element(u)} orthogonal to 1 and a")
    return w


def try_trivialize(C, a):
    """A witness or None ("unknown"); over fields this always succeeds."""
    r = C.ring
    if r.is_field:
        return field_trivialize(C, a)
    _sphere_check(C, a)
    if r.is_zero(C.polar(a, C.unit)):
        return traceless_case(C, a)
    # small candidates u = e_i, e_i +- e_j
    cands = [C.basis(i) for i in range(DIM)]
    for i, j in itertools.combinations(range(DIM), 2):
        cands.append(r.reduce(C.basis(i) + C.basis(j)))
        cands.append(r.reduce(C.basis(i) - C.basis(j)))
    for u in cands:
        if r.is_unit(C.norm(u)) and r.is_zero(C.polar(u, C.unit)) and r.is_zero(C.polar(u, a)):
            return orthogonal_case(C, a, u)
    return None
