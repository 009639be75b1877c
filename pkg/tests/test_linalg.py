import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isotopy import linalg
from isotopy.errors import NotInvertible, NoSolution, UnsupportedRing
from isotopy.rings import parse_ring

RINGS = ["Z", "Q", "F7", "Z/8", "Z/12", "F4", "Z[t]", "Z/4[t,1/t]"]


def matrices(spec, n):
    r = parse_ring(spec)
    if r.order is not None:
        elems = st.integers(0, r.order - 1).map(lambda i: r.from_index(i) if hasattr(r, "from_index") else r(i))
    elif spec.endswith("]"):
        elems = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).map(
            lambda c: r.add(r.monomial(c[0], 0), r.monomial(c[1], 1)))
    else:
        elems = st.integers(-6, 6).map(r)
    return st.lists(elems, min_size=n * n, max_size=n * n).map(lambda xs: r.array(np.array(xs, dtype=object).reshape(n, n)))


def _leibniz(r, m):
    """Permutation expansion; an independent determinant oracle for small n."""
    from itertools import permutations

    n = m.shape[0]
    total = r.zero
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = r.one
        for i in range(n):
            term = r.mul(term, m[i, p[i]])
        total = r.add(total, term if inv % 2 == 0 else r.neg(term))
    return total


@pytest.mark.parametrize("spec", RINGS)
def test_det_matches_permutation_expansion(spec):
    r = parse_ring(spec)

    @given(matrices(spec, 4))
    def run(m):
        assert r.eq(linalg.det(r, m), _leibniz(r, m))
        # constant term of the characteristic polynomial is (-1)^n det
        assert r.eq(linalg.charpoly(r, m)[-1], linalg.det(r, m))

    run()


@pytest.mark.parametrize("spec", RINGS)
def test_adjugate_identity(spec):
    r = parse_ring(spec)

    @given(matrices(spec, 3))
    def run(m):
        d = linalg.det(r, m)
        assert r.array_equal(r.matmul(linalg.adjugate(r, m), m), r.scale(d, r.eye(3)))

    run()


@pytest.mark.parametrize("spec", RINGS)
def test_inverse_when_det_is_unit(spec):
    r = parse_ring(spec)

    @given(matrices(spec, 3))
    def run(m):
        d = linalg.det(r, m)
        if r.is_unit(d):
            inv = linalg.inverse(r, m)
            assert r.array_equal(r.matmul(inv, m), r.eye(3))
            assert r.array_equal(r.matmul(m, inv), r.eye(3))
        else:
            with pytest.raises(NotInvertible):
                linalg.inverse(r, m)

    run()


def test_inverse_failure_reports_determinant():
    r = parse_ring("Z")
    with pytest.raises(NotInvertible) as err:
        linalg.inverse(r, r.array([[2, 0], [0, 1]]))
    assert err.value.value == 2


def test_zn_inverse_of_unimodular_matrix():
    r = parse_ring("Z/8")
    m = r.array([[1, 2], [2, 5]])  # det 1
    assert r.array_equal(r.matmul(m, linalg.inverse(r, m)), r.eye(2))


def test_solve_linear_and_kernel():
    r = parse_ring("Q")
    m = r.array([[1, 2, 3], [2, 4, 7]])
    x, kern = linalg.solve_linear(r, m, r.array([1, 3]))
    assert r.array_equal(r.reduce(m @ x), r.array([1, 3]))
    assert kern.shape == (1, 3)
    assert r.is_zero_array(r.reduce(m @ kern[0]))
    with pytest.raises(NoSolution):
        linalg.solve_linear(r, r.array([[1, 1], [1, 1]]), r.array([0, 1]))


def test_rref_needs_a_field():
    with pytest.raises(UnsupportedRing):
        linalg.rank(parse_ring("Z/8"), parse_ring("Z/8").eye(2))


def test_det_batch_matches_det(rng):
    r = parse_ring("F5")
    ms = r.random_array(rng, (50, 6, 6))
    batch = linalg.det_batch(r, ms)
    assert [int(d) for d in batch] == [int(linalg.det(r, m)) for m in ms]


def test_matrix_text_round_trip():
    r = parse_ring("Q")
    m = r.array([[1, r.parse("-1/2")], [0, 3]])
    assert r.array_equal(linalg.parse_matrix(r, linalg.format_matrix(r, m)), m)
