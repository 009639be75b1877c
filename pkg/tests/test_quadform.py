import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isotopy.errors import UnsupportedRing
from isotopy.octonion import zorn
from isotopy.quadform import QuadraticForm, diagonal, hyperbolic, is_composition, is_isometry
from isotopy.rings import parse_ring

Q = parse_ring("Q")
F2 = parse_ring("F2")


def test_evaluate_and_polar():
    q = QuadraticForm(Q, [[1, 2], [0, 3]])  # x^2 + 2xy + 3y^2
    x = Q.array([1, 1])
    assert q(x) == 6
    assert q.polar(Q.array([1, 0]), Q.array([0, 1])) == 2
    # lower entries are folded onto the upper triangle
    assert QuadraticForm(Q, [[1, 1], [1, 3]]) == q


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_polar_is_the_defect_of_q(v):
    q = diagonal(Q, [1, -2, 5])
    x, y = Q.array(v[:3]), Q.array(v[3:])
    assert q.polar(x, y) == q(Q.reduce(x + y)) - q(x) - q(y)


def test_hyperbolic_is_regular_everywhere():
    for spec in ("Z", "F2", "Z/8", "Q"):
        assert hyperbolic(parse_ring(spec), 4).is_regular()


def test_sum_of_squares_not_regular_over_z():
    q = diagonal(parse_ring("Z"), [1, 1])
    assert q.determinant() == 4
    assert not q.is_regular()


def test_odd_rank_char_2_nonsingular_but_not_regular():
    # x0 x1 + x2^2 over F2: the polar form has a one-dimensional radical on which q is nonzero
    q = QuadraticForm(F2, [[0, 1, 0], [0, 0, 0], [0, 0, 1]])
    assert not q.is_regular()
    assert q.is_nonsingular()
    assert q.radical().shape[0] == 0


def test_degenerate_char_2_form_is_singular():
    q = QuadraticForm(F2, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    # x2^2 + x2 x3 + x3^2 is regular; x2^2 + x3^2 = (x2 + x3)^2 has a radical
    q2 = QuadraticForm(F2, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert q.is_nonsingular()
    assert not q2.is_nonsingular()
    assert q2.radical().shape[0] == 1


def test_nonsingular_needs_a_field():
    with pytest.raises(UnsupportedRing):
        hyperbolic(parse_ring("Z"), 1).is_nonsingular()


def test_isometry_swap_and_negation():
    q = hyperbolic(Q, 1)
    swap = Q.array([[0, 1], [1, 0]])
    assert is_isometry(q, q, swap)
    assert not is_isometry(q, q, Q.array([[2, 0], [0, 1]]))
    assert is_isometry(q, q, Q.array([[2, 0], [0, Q.parse("1/2")]]))


def test_json_round_trip():
    q = zorn(Q).norm_form
    data = json.loads(json.dumps(q.to_json()))
    assert QuadraticForm.from_json(Q, data) == q


def test_zorn_norm_is_multiplicative():
    for spec in ("Z", "F3", "Z/8"):
        C = zorn(parse_ring(spec))
        q = C.norm_form
        assert is_composition(q, q, q, C.structure)


def test_family_and_exhaustive_agree_over_f2():
    C = zorn(F2)
    q = C.norm_form
    assert is_composition(q, q, q, C.structure, exhaustive=True)

    @given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
    def run(i, j, k):
        s = C.structure.copy()
        s[i, j, k] ^= 1
        assert is_composition(q, q, q, s) == is_composition(q, q, q, s, exhaustive=True)

    run()


def test_wrong_form_is_not_composition():
    C = zorn(Q)
    q = C.norm_form
    assert not is_composition(hyperbolic(Q, 4), q, q, C.structure)
    assert not is_composition(q, q, q, Q.reduce(2 * C.structure))
    s = C.structure.copy()
    s[0, 0, 0] = Q(0)
    assert not is_composition(q, q, q, s)
