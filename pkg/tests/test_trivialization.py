import json

import pytest

from isotopy.errors import NotInvertible, PreconditionFailed, UnsupportedRing
from isotopy.octonion import parse_algebra
from isotopy.trivialization import (
    bimul_chain_iso,
    lr_chain_iso,
    conjug_identity_holds,
    cube_case,
    field_trivialize,
    find_orthogonal_unit,
    orthogonal_case,
    tau_minus,
    tau_plus,
    tau_plus_inverse,
    tau_plus_matrix,
    tau_minus_matrix,
    tau_triple,
    traceless_case,
    try_trivialize,
)

FIELDS = ["zorn(F2)", "zorn(F3)", "zorn(F5)", "zorn(Q)", "cd(Q,-1,-1,-1)"]


def _traceless_unit(C, rng):
    """A random conjugate c a0 c^-1 of a fixed trace-zero, norm-one a0."""
    a0 = C.basis(1) if C.name.startswith("cd(") else C.parse_element("0,0,1,0,0,-1,0,0").coords
    c = C.random_invertible(rng)
    return C.mul(C.mul(c, a0), C.inv(c))


def test_tau_maps(algebra, rng):
    r = algebra.ring
    c = algebra.random_invertible(rng)
    x = algebra.random(rng)
    y = tau_plus(algebra, c, x)
    assert r.array_equal(tau_plus_inverse(algebra, c, y), x)
    assert r.array_equal(r.reduce(tau_plus_matrix(algebra, c) @ x), y)
    assert r.array_equal(r.reduce(tau_minus_matrix(algebra, c) @ x), tau_minus(algebra, c, x))
    assert conjug_identity_holds(algebra, c)


def test_tau_minus_is_not_the_inverse_of_tau_plus():
    C = parse_algebra("zorn(Q)")
    r = C.ring
    c = C.parse_element("2,1,0,0,0,0,0,0").coords
    x = C.parse_element("0,0,1,0,0,0,0,0").coords
    assert not r.array_equal(tau_minus(C, c, tau_plus(C, c, x)), x)


def test_tau_needs_an_invertible_element():
    C = parse_algebra("zorn(Q)")
    with pytest.raises(NotInvertible):
        tau_plus(C, C.basis(0), C.unit)


def test_tau_triple_is_related(algebra, rng):
    cs = [algebra.random_unit_norm(rng) for _ in range(3)]
    assert tau_triple(algebra, cs).is_related()


def test_lr_chain(algebra, rng):
    cs = [algebra.random_unit_norm(rng) for _ in range(2)]
    w = lr_chain_iso(algebra, cs)
    assert w.check()
    assert len(w.trace) == 2


def test_bimul_chain_with_traceless_elements(rng):
    for spec in ("zorn(F3)", "zorn(Q)", "cd(Q,-1,-1,-1)"):
        C = parse_algebra(spec)
        cs = [_traceless_unit(C, rng) for _ in range(2)]
        assert all(C.ring.is_zero(C.trace(c)) and C.ring.eq(C.norm(c), C.ring.one) for c in cs)
        w = bimul_chain_iso(C, cs)
        assert w.check()
        assert C.ring.array_equal(w.target.a, C.mul(cs[1], cs[0]))


def test_bimul_chain_precondition():
    C = parse_algebra("zorn(Q)")
    c = C.parse_element("2,1/2,0,0,0,0,0,0").coords
    with pytest.raises(PreconditionFailed) as info:
        bimul_chain_iso(C, [c])
    assert set(info.value.details) == {"L_chain", "Lbar_chain"}


def test_cube_case(algebra, rng):
    r = algebra.ring
    c = algebra.random_unit_norm(rng)
    w = cube_case(algebra, c)
    assert w.check()
    assert r.array_equal(w.target.a, algebra.mul(algebra.mul(c, c), c))


def test_traceless_case(rng):
    for spec in ("zorn(F3)", "zorn(Q)", "zorn(Z)"):
        C = parse_algebra(spec)
        a = C.parse_element("0,0,1,0,0,-1,0,0").coords
        w = traceless_case(C, a)
        assert w.check()
    C = parse_algebra("zorn(Q)")
    with pytest.raises(PreconditionFailed):
        traceless_case(C, C.unit)


@pytest.mark.parametrize("spec", FIELDS)
def test_field_trivialize_every_sampled_point(spec, rng):
    C = parse_algebra(spec)
    r = C.ring
    for _ in range(8):
        a = C.random_unit_norm(rng)
        w = field_trivialize(C, a)
        assert w.check()
        assert r.array_equal(w.target.a, a)
        assert r.array_equal(w.target.b, C.conj(a))
        u = find_orthogonal_unit(C, a)
        assert r.is_zero(C.polar(u, C.unit)) and r.is_zero(C.polar(u, a))


def test_orthogonal_case_precondition():
    C = parse_algebra("zorn(Q)")
    with pytest.raises(PreconditionFailed) as info:
        orthogonal_case(C, C.unit, C.unit)
    assert "b(u,1)" in info.value.details


def test_field_trivialize_rejects():
    with pytest.raises(UnsupportedRing):
        field_trivialize(parse_algebra("zorn(Z)"), parse_algebra("zorn(Z)").unit)
    C = parse_algebra("zorn(Q)")
    with pytest.raises(PreconditionFailed):
        field_trivialize(C, C.scalar(2))


def test_try_trivialize_over_rings(rng):
    for spec in ("zorn(Z)", "zorn(Z/8)"):
        C = parse_algebra(spec)
        found = 0
        for _ in range(10):
            a = C.random_unit_norm(rng)
            w = try_trivialize(C, a)
            if w is not None:
                found += 1
                assert w.check()
                assert C.ring.array_equal(w.target.a, a)
        assert found > 0
    C = parse_algebra("zorn(Z)")
    assert try_trivialize(C, C.unit).check()


def test_witness_json():
    C = parse_algebra("zorn(F3)")
    w = field_trivialize(C, C.parse_element("1,1,1,0,0,0,0,0").coords)
    data = json.loads(json.dumps(w.to_json()))
    assert data["source"] == "zorn(F3)"
    assert data["target"]["a"] == "1,1,1,0,0,0,0,0"
    assert len(data["map"]) == 8
    assert data["trace"][0].startswith("u = ")
