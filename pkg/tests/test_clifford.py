import pytest

from isotopy.clifford import (
    N,
    alpha,
    is_even,
    is_spin,
    scalar_spin,
    sigma,
    spin_from_triple,
    spin_generator,
    triple_from_spin,
)
from isotopy.errors import NotRelated, NotSpin
from isotopy.octonion import parse_algebra
from isotopy.triality import RelatedTriple, kernel_triple, random_related_triple


def test_alpha_squares_to_the_norm(algebra, rng):
    r = algebra.ring
    x, y = algebra.random(rng), algebra.random(rng)
    ax, ay = alpha(algebra, x), alpha(algebra, y)
    assert r.array_equal(r.matmul(ax, ax), r.scale(algebra.norm(x), r.eye(N)))
    anti = r.reduce(r.matmul(ax, ay) + r.matmul(ay, ax))
    assert r.array_equal(anti, r.scale(algebra.polar(x, y), r.eye(N)))
    assert r.array_equal(sigma(algebra, ax), ax)


def test_alpha_is_linear_and_odd(algebra, rng):
    r = algebra.ring
    x, y = algebra.random(rng), algebra.random(rng)
    assert r.array_equal(alpha(algebra, r.reduce(x + y)), r.reduce(alpha(algebra, x) + alpha(algebra, y)))
    assert not is_even(algebra, alpha(algebra, algebra.unit))


def test_sigma_is_an_anti_involution(algebra, rng):
    r = algebra.ring
    m1 = r.random_array(rng, (N, N))
    m2 = r.random_array(rng, (N, N))
    assert r.array_equal(sigma(algebra, sigma(algebra, m1)), m1)
    assert r.array_equal(sigma(algebra, r.matmul(m1, m2)), r.matmul(sigma(algebra, m2), sigma(algebra, m1)))


def test_spin_triple_round_trip(algebra, rng):
    for _ in range(3):
        t = random_related_triple(algebra, rng, 2)
        u = spin_from_triple(t)
        assert is_spin(algebra, u)
        assert triple_from_spin(algebra, u).equals(t)


def test_spin_map_is_a_homomorphism(algebra, rng):
    r = algebra.ring
    s, t = random_related_triple(algebra, rng, 2), random_related_triple(algebra, rng, 2)
    lhs = spin_from_triple(s * t)
    rhs = r.matmul(spin_from_triple(s), spin_from_triple(t))
    assert r.array_equal(lhs, rhs)


def test_generators_from_vectors(algebra, rng):
    r = algebra.ring
    x = algebra.random_unit_norm(rng)
    y = algebra.random_unit_norm(rng)
    u = spin_generator(algebra, x, y)
    assert is_spin(algebra, u)
    t = triple_from_spin(algebra, u)
    assert t.is_related()
    assert r.array_equal(spin_from_triple(t), u)


def test_scalars_give_the_kernel():
    C = parse_algebra("zorn(Q)")
    u = scalar_spin(C, -1)
    assert is_spin(C, u)
    assert triple_from_spin(C, u).equals(kernel_triple(C, -1))


def test_non_spin_inputs(rng):
    C = parse_algebra("zorn(Q)")
    r = C.ring
    with pytest.raises(NotSpin):
        triple_from_spin(C, alpha(C, C.unit))
    with pytest.raises(NotSpin):
        triple_from_spin(C, scalar_spin(C, 2))
    assert not is_spin(C, r.eye(8))
    e = r.eye(8)
    with pytest.raises(NotRelated):
        spin_from_triple(RelatedTriple(e, r.scale(r(2), e), e, C))


def test_even_isometry_outside_spin_is_rejected():
    C = parse_algebra("zorn(Q)")
    r = C.ring
    u = r.eye(N)
    u[8:, 8:] = C.conj_matrix  # a reflection, so conjugation cannot preserve alpha(C)
    assert is_even(C, u)
    assert r.array_equal(r.matmul(u, sigma(C, u)), r.eye(N))
    assert not is_spin(C, u)
    # diag(I, -I) does lie in the spin group: it is the triple (-I, -I, I)
    v = r.eye(N)
    v[8:, 8:] = r.scale(r(-1), r.eye(8))
    t = triple_from_spin(C, v)
    assert t.equals(RelatedTriple(r.scale(r(-1), r.eye(8)), v[8:, 8:], r.eye(8), C))
