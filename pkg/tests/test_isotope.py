import numpy as np
import pytest

from isotopy.errors import NotInvertible
from isotopy.isotope import (
    Isotope,
    failing_pair,
    is_algebra_isomorphism,
    isotope_norm_certified,
    kps_star,
    norm_by_solving,
    isotope_formula_maps,
    standard_form,
    standard_form_links,
    trialitarian_isotope_maps,
)
from isotopy.octonion import DIM, parse_algebra, zorn
from isotopy.quadform import QuadraticForm
from isotopy.rings import parse_ring


def _pair(C, rng):
    return C.random_invertible(rng), C.random_invertible(rng)


def test_isotope_product_and_unit(algebra, rng):
    r = algebra.ring
    a, b = _pair(algebra, rng)
    iso = Isotope(algebra, a, b)
    x, y = algebra.random(rng), algebra.random(rng)
    # structure tensor against direct products
    direct = algebra.mul(algebra.mul(x, a), algebra.mul(b, y))
    via_tensor = r.reduce(np.einsum("i,j,ijk->k", x, y, iso.structure))
    assert r.array_equal(iso.mul(x, y), direct)
    assert r.array_equal(via_tensor, direct)
    assert r.array_equal(iso.mul(iso.unit, x), x)
    assert r.array_equal(iso.mul(x, iso.unit), x)


def test_isotope_norm(algebra, rng):
    a, b = _pair(algebra, rng)
    assert isotope_norm_certified(Isotope(algebra, a, b))


def test_isotope_norm_matches_solved_norm():
    C = parse_algebra("zorn(Q)")
    r = C.ring
    rng = np.random.default_rng(3)
    iso = Isotope(C, C.random_invertible(rng), C.random_invertible(rng))
    for _ in range(5):
        x = C.random(rng)
        t, n = norm_by_solving(iso, x)
        assert r.eq(n, iso.norm(x))
        assert r.eq(t, r.reduce(C.polar(x, iso.unit) * iso.scale))
    assert norm_by_solving(iso, iso.unit) is None


def test_wrong_norm_is_rejected():
    C = parse_algebra("zorn(Q)")
    iso = Isotope(C, C.scalar(2), C.unit)
    assert isotope_norm_certified(iso)
    assert not isotope_norm_certified(iso, C.norm_form)


def test_non_unit_parameter():
    C = zorn(parse_ring("Q"))
    with pytest.raises(NotInvertible):
        Isotope(C, C.basis(0), C.unit)


def test_ten_classical_maps(algebra, rng):
    for _ in range(2):
        a, b = _pair(algebra, rng)
        maps = isotope_formula_maps(algebra, a, b)
        assert len(maps) == 10
        for m in maps:
            assert m.check(), m.name


def test_classical_maps_batched(rng):
    C = parse_algebra("zorn(F3)")
    a = np.stack([C.random_invertible(rng) for _ in range(16)])
    b = np.stack([C.random_invertible(rng) for _ in range(16)])
    for m in isotope_formula_maps(C, a, b):
        assert np.all(m.check()), m.name


def test_identity_is_not_an_isomorphism_onto_a_proper_isotope():
    C = parse_algebra("zorn(Q)")
    r = C.ring
    a = C.parse_element("2,1/2,0,0,0,0,0,0").coords
    target = Isotope(C, a, C.unit)
    assert not is_algebra_isomorphism(r.eye(DIM), C, target)
    assert failing_pair(r.eye(DIM), C, target) is not None
    assert failing_pair(C.left_mul(a), Isotope(C, C.unit, C.mul(C.mul(a, C.unit), a)), target) is None


def test_kps_star(algebra, rng):
    u = algebra.random_invertible(rng)
    star, witness, target = kps_star(algebra, u)
    r = algebra.ring
    x, y = algebra.random(rng), algebra.random(rng)
    assert r.array_equal(star.mul(x, y), algebra.mul(algebra.mul(x, algebra.mul(y, u)), algebra.inv(u)))
    assert is_algebra_isomorphism(witness, star, target)


def test_standard_form(algebra, rng):
    a, b = _pair(algebra, rng)
    c, w = standard_form(algebra, a, b)
    assert algebra.ring.array_equal(c, algebra.mul(algebra.inv(a), b))
    assert is_algebra_isomorphism(w, Isotope(algebra, a, b), Isotope(algebra, algebra.unit, c))


def test_trialitarian_isotopes_and_links(algebra, rng):
    a, b = _pair(algebra, rng)
    for m in trialitarian_isotope_maps(algebra, a, b) + standard_form_links(algebra, a, b):
        assert m.check(), m.name


def test_isotope_conjugation_is_standard(algebra, rng):
    r = algebra.ring
    a, b = _pair(algebra, rng)
    iso = Isotope(algebra, a, b)
    x = algebra.random(rng)
    lhs = iso.mul(x, iso.conj(x))
    assert r.array_equal(lhs, r.scale(iso.norm(x), iso.unit))
    assert isinstance(iso.norm_form, QuadraticForm)
