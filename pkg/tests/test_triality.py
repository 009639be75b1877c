import json
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isotopy.errors import NotIsomorphism, NotRelated, NotUnitNorm
from isotopy.isotope import Isotope
from isotopy.octonion import parse_algebra
from isotopy.triality import (
    RelatedTriple,
    basic_triple,
    composition_correspondence,
    delta_mask,
    identity_triple,
    is_automorphism_triple,
    is_related,
    iso_from_triple,
    iso_sign,
    kernel_triple,
    pair_action_holds,
    random_related_triple,
    relation_mask,
    s_triple,
    same_up_to_kernel,
    triple_from_iso,
    twist_conjugate,
)


def test_basic_triple(algebra, rng):
    c = algebra.random_unit_norm(rng)
    t = basic_triple(algebra, c)
    assert t.is_related()
    assert bool(delta_mask(algebra, *t.components()))
    assert t.rotate().is_related()
    assert t.rotate().rotate().rotate().equals(t)
    assert (t * t.inverse()).equals(identity_triple(algebra))
    assert pair_action_holds(algebra, t)
    assert composition_correspondence(algebra, t)


def test_basic_triple_needs_norm_one(algebra):
    with pytest.raises(NotUnitNorm):
        basic_triple(algebra, algebra.scalar(0))


def test_random_matrices_are_not_related(algebra, rng):
    r = algebra.ring
    m = r.random_array(rng, (3, 8, 8))
    assert not is_related(algebra, *m)


@given(st.integers(0, 2**32 - 1))
def test_products_of_related_triples_are_related(seed):
    C = parse_algebra("zorn(F3)")
    rng = np.random.default_rng(seed)
    s, t = random_related_triple(C, rng, 2), random_related_triple(C, rng, 2)
    u = s * t
    assert u.is_related()
    # two independent characterizations must agree
    assert bool(delta_mask(C, *u.components()))
    assert pair_action_holds(C, u)


def test_kernel_triple_and_sign():
    C = parse_algebra("zorn(Q)")
    k = kernel_triple(C, -1)
    assert k.is_related()
    t = basic_triple(C, C.random_unit_norm(np.random.default_rng(0)))
    assert same_up_to_kernel(t, t * k) == -1
    a, b = t.pi()
    assert iso_sign(C, t * k, a, b) == -1
    assert iso_sign(C, t, a, b) == 1
    with pytest.raises(ValueError):
        kernel_triple(C, 2)


def test_automorphisms():
    C = parse_algebra("zorn(Q)")
    assert is_automorphism_triple(C, identity_triple(C).t1)
    c = C.parse_element("0,0,1,0,0,-1,0,0").coords  # norm 1, B_c is not an automorphism
    assert not is_automorphism_triple(C, C.bimul(c))


def test_iso_triple_round_trip(algebra, rng):
    t = random_related_triple(algebra, rng, 3)
    a, b, f = iso_from_triple(t)
    s = triple_from_iso(algebra, f, a, b)
    assert s.is_related()
    assert s.equals(t)


def test_non_isomorphism_and_non_related_are_rejected():
    C = parse_algebra("zorn(Q)")
    r = C.ring
    with pytest.raises(NotIsomorphism):
        triple_from_iso(C, r.scale(r(2), r.eye(8)), C.unit, C.unit)
    e = r.eye(8)
    with pytest.raises(NotRelated):
        iso_from_triple(RelatedTriple(e, r.scale(r(2), e), e, C))


def test_s_triple(algebra, rng):
    a, b = algebra.random_unit_norm(rng), algebra.random_unit_norm(rng)
    assert s_triple(algebra, a, b).is_related()


def test_twist_sends_isotope_triples_to_base_triples(rng):
    C = parse_algebra("zorn(Q)")
    a, b = C.random_unit_norm(rng), C.random_unit_norm(rng)
    iso = Isotope(C, a, b)
    t = random_related_triple(iso, rng, 2, sample=C.random_unit_norm)
    assert t.is_related()
    assert twist_conjugate(C, t, a, b).is_related()


def test_isotope_triples_need_the_isotope_involution(rng):
    C = parse_algebra("zorn(Q)")
    a, b = C.random_unit_norm(rng), C.random_unit_norm(rng)
    iso = Isotope(C, a, b)
    assert not C.ring.array_equal(iso.conj_matrix, C.conj_matrix)
    t = basic_triple(iso, C.random_unit_norm(rng))
    base_involution = SimpleNamespace(ring=C.ring, structure=iso.structure, conj_matrix=C.conj_matrix)
    assert bool(relation_mask(iso, *t.components()))
    assert not bool(relation_mask(base_involution, *t.components()))


def test_batched_masks(rng):
    C = parse_algebra("zorn(F2)")
    ts = [random_related_triple(C, rng, 2) for _ in range(6)]
    stack = [np.stack([t.components()[i] for t in ts]) for i in range(3)]
    stack[1][0] = C.ring.eye(8)  # break one
    m = relation_mask(C, *stack)
    assert m.shape == (6,)
    assert m[0] == is_related(C, ts[0].t1, C.ring.eye(8), ts[0].t3)
    assert m[1:].all()


def test_json_round_trip(rng):
    C = parse_algebra("cd(Q,-1,-1,-1)")
    t = random_related_triple(C, rng, 2)
    data = json.loads(json.dumps(t.to_json()))
    assert RelatedTriple.from_json(C, data).equals(t)
