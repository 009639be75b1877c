import numpy as np
import pytest

from isotopy.errors import NotReached, PreconditionFailed, UnsupportedFieldSize
from isotopy.orbits import (
    default_generators,
    default_orbit,
    enumerate_sphere,
    isotope_witness_via_orbit,
    orbit_of_pair,
    sphere_size,
)
from isotopy.triality import identity_triple


@pytest.mark.parametrize("q, n", [(2, 120), (3, 2160), (4, 16320), (5, 78000), (7, 823200)])
def test_sphere_counts(q, n):
    assert sphere_size(q) == n
    table = enumerate_sphere(q)
    assert len(table) == n
    C = table.algebra
    r = C.ring
    sample = table.elements()[:: max(1, n // 50)]
    assert all(r.eq(C.norm(x), r.one) for x in sample)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_scan_and_hyperbolic_agree(q):
    a = enumerate_sphere(q, "scan")
    b = enumerate_sphere(q, "hyperbolic")
    assert np.array_equal(a.codes, b.codes)


def test_unsupported_field_size():
    with pytest.raises(UnsupportedFieldSize):
        enumerate_sphere(9)


def test_lookup():
    table = enumerate_sphere(3)
    C = table.algebra
    assert table.index_of(C.unit) >= 0
    assert table.index_of(C.scalar(0)) == -1
    for i in (0, 7, 2159):
        assert table.index_of(table.element(i)) == i


def test_orbit_q2_is_everything():
    orbit = default_orbit(2)
    assert orbit.size == sphere_size(2) ** 2
    assert orbit.contains(5, 17)


def test_orbit_from_an_arbitrary_start():
    table = enumerate_sphere(2)
    orbit = orbit_of_pair(table, start=(11, 93))
    assert orbit.size == sphere_size(2) ** 2


def test_identity_generator_fixes_the_start():
    table = enumerate_sphere(2)
    orbit = orbit_of_pair(table, generators=identity_triple(table.algebra))
    assert orbit.size == 1
    with pytest.raises(NotReached):
        orbit.word(0, 1)


def test_words_reach_their_pairs():
    orbit = default_orbit(2)
    table = orbit.table
    r = table.algebra.ring
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, len(table), (10, 2)):
        t = orbit.triple(orbit.word(int(i), int(j)))
        x, y = t.pi()
        assert r.array_equal(x, table.element(int(i)))
        assert r.array_equal(y, table.element(int(j)))
        assert t.is_related()


def test_all_triples_match_their_pairs():
    orbit = default_orbit(2)
    table = orbit.table
    order, trip = orbit.all_triples()
    assert len(order) == orbit.size
    C = table.algebra
    r = C.ring
    u = r.reduce(trip.t3 @ C.unit)
    v = r.reduce(trip.t2 @ C.unit)
    i, j = np.divmod(order, len(table))
    assert np.array_equal(table.lookup(table.tables.from_ring(u)), i)
    assert np.array_equal(table.lookup(table.tables.from_ring(v)), j)


def test_generators_are_related():
    table = enumerate_sphere(3)
    g = default_generators(table, points=[0, 1])
    assert g.t1.shape == (6, 8, 8)
    assert g.is_related()


def test_witness_via_orbit_q2():
    table = enumerate_sphere(2)
    a, b = table.element(3), table.element(100)
    w = isotope_witness_via_orbit(2, a, b)
    assert w.check()
    assert len(w.trace) > 0


def test_witness_rejects_off_sphere():
    C = enumerate_sphere(2).algebra
    with pytest.raises(PreconditionFailed):
        isotope_witness_via_orbit(2, C.scalar(0), C.unit)


def test_pair_ceiling():
    with pytest.raises(UnsupportedFieldSize):
        orbit_of_pair(enumerate_sphere(3))


def test_orbit_q3_with_raised_ceiling():
    orbit = default_orbit(3, 5_000_000)
    assert orbit.size == sphere_size(3) ** 2
    table = orbit.table
    C = table.algebra
    a = C.parse_element("1,1,1,0,0,0,0,0").coords
    b = C.parse_element("0,0,1,0,0,2,0,0").coords
    w = isotope_witness_via_orbit(3, a, b, orbit)
    assert w.check()
