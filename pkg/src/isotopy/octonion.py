"""Octonion algebras over commutative rings, given by structure constants.

The algebra works on coordinate vectors of length 8: ``mul`` accepts
stacks of shape (..., 8) so that randomized identity checks run vectorized.
``Octonion`` is a thin value wrapper for interactive use.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import linalg
from .errors import AlgebraMismatch, NonUnitParameter, NotFound, NotInvertible, UnsupportedRing
from .quadform import QuadraticForm
from .rings import parse_ring

DIM = 8
ZORN_LABELS = ("E11", "E22", "u1", "u2", "u3", "w1", "w2", "w3")


class OctonionAlgebra:
    def __init__(self, ring, structure, unit, norm, name, labels=None):
        self.ring = ring
        self.structure = ring.array(structure)
        self.unit = ring.array(unit)
        self.norm_form = norm
        self.name = name
        self.labels = labels or tuple(f"e{i}" for i in range(DIM))
        n = DIM
        self._flat = self.structure.reshape(n, n * n)
        # structure terms grouped by output coordinate, used for object rings
        self._terms = [
            [(i, j, self.structure[i, j, k]) for i in range(n) for j in range(n)
             if not ring.is_zero(self.structure[i, j, k])]
            for k in range(n)
        ]
        self.trace_vector = ring.reduce(norm.polar_matrix @ self.unit)
        self.conj_matrix = ring.reduce(np.outer(self.unit, self.trace_vector) - ring.eye(n))

    def __repr__(self):
        return f"OctonionAlgebra({self.name})"

    def __eq__(self, other):
        return isinstance(other, OctonionAlgebra) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    # coordinate-level arithmetic ---------------------------------------

    def mul(self, x, y):
        """Product of coordinate stacks x, y of shape (..., 8)."""
        r = self.ring
        if r.dtype is object:
            x, y = np.broadcast_arrays(np.asarray(x, dtype=object), np.asarray(y, dtype=object))
            out = np.empty(x.shape, dtype=object)
            for k, terms in enumerate(self._terms):
                acc = r.zeros(x.shape[:-1])
                for i, j, c in terms:
                    prod = x[..., i] * y[..., j]
                    if c == r.one:
                        acc = acc + prod
                    elif c == -r.one:
                        acc = acc - prod
                    else:
                        acc = acc + prod * c
                out[..., k] = acc
            return out
        a = r.reduce(x @ self._flat).reshape(x.shape[:-1] + (DIM, DIM))
        return r.reduce(np.einsum("...j,...jk->...k", y, a))

    def conj(self, x):
        r = self.ring
        return r.reduce(np.multiply.outer(self.trace(x), self.unit) - x)

    def norm(self, x):
        return self.norm_form.evaluate(x)

    def polar(self, x, y):
        return self.norm_form.polar(x, y)

    def trace(self, x):
        r = self.ring
        return r.reduce((x * self.trace_vector).sum(axis=-1))

    def inv(self, x):
        r = self.ring
        n = self.norm(x)
        if np.ndim(n):
            return r.reduce(self.conj(x) * r.inv_array(n)[..., None])
        if not r.is_unit(n):
            raise NotInvertible(f"norm {r.format(n)} is not a unit", n)
        return r.scale(r.inv(n), self.conj(x))

    def scalar(self, s):
        return self.ring.scale(self.ring(s), self.unit)

    def basis(self, i):
        v = self.ring.zeros(DIM)
        v[i] = self.ring.one
        return v

    def left_mul(self, a):
        """Matrix of x -> a x (a stack of elements gives a stack of matrices)."""
        a = _coords(a)
        return self.ring.reduce(np.einsum("...i,ijk->...kj", a, self.structure))

    def right_mul(self, a):
        """Matrix of x -> x a."""
        a = _coords(a)
        return self.ring.reduce(np.einsum("...j,ijk->...ki", a, self.structure))

    def bimul(self, a):
        """Matrix of x -> a x a (= L_a R_a = R_a L_a by alternativity)."""
        return self.ring.matmul(self.left_mul(a), self.right_mul(a))

    def element(self, coords):
        return Octonion(self, self.ring.array(coords))

    def parse_element(self, text):
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != DIM:
            raise ValueError(f"expected {DIM} comma-separated coordinates, got {len(parts)}")
        return self.element([self.ring.parse(p) for p in parts])

    def format_element(self, x):
        return ",".join(self.ring.format(c) for c in _coords(x))

    @property
    def one(self):
        return Octonion(self, self.unit)

    # random elements -----------------------------------------------------

    def random(self, rng, size=None):
        shape = (DIM,) if size is None else (size, DIM)
        return self.ring.random_array(rng, shape)

    def random_invertible(self, rng):
        r = self.ring
        if r.order is not None or r.is_field:
            while True:
                x = self.random(rng)
                if r.is_unit(self.norm(x)):
                    return x
        return self.mul(self._random_norm(rng, r.random_unit(rng)), self.random_unit_norm(rng))

    def random_unit_norm(self, rng):
        """A random element of norm exactly 1."""
        r = self.ring
        if r.order is not None:
            while True:
                x = self.random(rng)
                if r.eq(self.norm(x), r.one):
                    return x
        x = self._random_norm(rng, r.one)
        y = self._random_norm(rng, r.one)
        return self.mul(x, y)

    def _random_norm(self, rng, target):
        # split algebras: solve ab - v.w = target for b; otherwise x^2/q(x)
        # has norm one, and scalar multiples reach the squares of units
        r = self.ring
        if self.name.startswith("zorn("):
            a = r.random_unit(rng)
            v = r.random_array(rng, 3)
            w = r.random_array(rng, 3)
            b = r.mul(r.inv(a), r.add(target, r.reduce((v * w).sum())))
            return r.array([a, b, *v, *w])
        if not r.eq(target, r.one):
            # a scalar multiple of a norm-one element has norm s^2
            s = r.random_unit(rng)
            return r.scale(s, self._random_norm(rng, r.one))
        for _ in range(200):
            x = self.random(rng)
            nx = self.norm(x)
            if r.is_unit(nx):
                return r.scale(r.inv(nx), self.mul(x, x))
        raise NotFound(f"could not sample a norm-one element over {r.spec}")

    # identity suite --------------------------------------------------------

    def is_field_level_centre_trivial(self):
        """Over a field: both the commutant and the middle nucleus are R*1."""
        r = self.ring
        if not r.is_field:
            raise UnsupportedRing(f"{r.spec} is not a field")
        basis = [self.basis(i) for i in range(DIM)]
        rows = [r.reduce(self.left_mul(e) - self.right_mul(e)) for e in basis]
        commutant = linalg.kernel(r, np.concatenate(rows))
        rows = []
        for y in basis:
            for z in basis:
                # x -> y(xz) - (yx)z
                rows.append(r.reduce(self.left_mul(y) @ self.right_mul(z) - self.right_mul(z) @ self.left_mul(y)))
        nucleus = linalg.kernel(r, np.concatenate(rows))
        ok = commutant.shape[0] == 1 and nucleus.shape[0] == 1
        for k in (commutant, nucleus):
            if k.shape[0] == 1:
                ok = ok and linalg.rank(r, np.stack([k[0], self.unit])) == 1
        return ok

    def unit_complement_basis(self):
        """Basis of 1^perp; also checks that the restricted norm is non-singular."""
        r = self.ring
        if not r.is_field:
            raise UnsupportedRing(f"{r.spec} is not a field")
        basis = linalg.kernel(r, self.trace_vector.reshape(1, DIM))
        if basis.shape[0] != DIM - 1:
            raise AssertionError("trace functional is not surjective")
        if not self.norm_form.restrict(basis).is_nonsingular():
            raise AssertionError("restricted norm is singular")
        return basis

    def trace_one_element(self):
        """Some c with tr(c) = 1."""
        r = self.ring
        t = self.trace_vector
        for i in range(DIM):
            if r.eq(t[i], r.one):
                return self.basis(i)
        for i in range(DIM):
            if r.is_unit(t[i]):
                return r.scale(r.inv(t[i]), self.basis(i))
        if r.is_field:
            x, _ = linalg.solve_linear(r, t.reshape(1, DIM), r.array([1]))
            return x
        raise NotFound(f"no element of trace 1 found over {r.spec}")

    def summand_split(self, x, a, z):
        """Write z = lam*x + w with w orthogonal to conj(a) x, for q(x) a unit and tr(a) = 1."""
        r = self.ring
        nx = self.norm(x)
        lam = r.mul(r.inv(nx), self.polar(self.mul(a, z), x))
        w = r.reduce(z - r.scale(lam, x))
        return lam, w


def _first_failure(C, ok, samples):
    bad = np.flatnonzero(~np.asarray(ok, dtype=bool))
    if not len(bad):
        return None
    i = int(bad[0])
    return {name: C.format_element(v[i]) for name, v in samples.items()}


def identity_suite(C, samples=500, seed=0, rng=None):
    """Randomized check of the octonion identities on ``samples`` triples.

    Returns a report: a list of {name, status, failures, counterexample}.
    The centre check (commutant and middle nucleus are R1) is added over
    fields, where it is decided exactly.
    """
    r = C.ring
    rng = rng if rng is not None else np.random.default_rng(seed)
    x, y, c = (C.random(rng, samples) for _ in range(3))
    m = C.mul
    eq = lambda u, v: np.all(u == v, axis=-1)  # noqa: E731
    xx = m(x, x)
    checks = {
        "left alternative": eq(m(xx, y), m(x, m(x, y))),
        "right alternative": eq(m(y, xx), m(m(y, x), x)),
        "flexible": eq(m(m(x, y), x), m(x, m(y, x))),
        "middle Moufang": eq(m(m(c, m(x, y)), c), m(m(c, x), m(y, c))),
        "left Moufang": eq(m(c, m(x, m(c, y))), m(m(m(c, x), c), y)),
        "right Moufang": eq(m(m(m(x, c), y), c), m(x, m(c, m(y, c)))),
        "norm multiplicative": np.asarray(C.norm(m(x, y)) == r.reduce(C.norm(x) * C.norm(y))),
        "x conj(x) = q(x) 1": eq(m(x, C.conj(x)), r.reduce(np.multiply.outer(C.norm(x), C.unit))),
    }
    report = []
    for name, ok in checks.items():
        ok = np.asarray(ok, dtype=bool)
        fails = int(np.count_nonzero(~ok))
        report.append({
            "name": name,
            "status": "pass" if fails == 0 else "fail",
            "failures": fails,
            "counterexample": _first_failure(C, ok, {"x": x, "y": y, "c": c}),
        })
    if r.is_field:
        ok = C.is_field_level_centre_trivial()
        report.append({"name": "centre is R1", "status": "pass" if ok else "fail", "failures": int(not ok),
                       "counterexample": None})
    return report


def _coords(x):
    return x.coords if isinstance(x, Octonion) else x


class Octonion:
    """An element of an octonion algebra (value semantics)."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = coords

    def _same(self, other):
        if not isinstance(other, Octonion):
            return None
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
        return other.coords

    def __add__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return Octonion(self.algebra, self.algebra.ring.reduce(self.coords + o))

    def __sub__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return Octonion(self.algebra, self.algebra.ring.reduce(self.coords - o))

    def __neg__(self):
        return Octonion(self.algebra, self.algebra.ring.reduce(-self.coords))

    def __mul__(self, other):
        o = self._same(other)
        if o is None:
            r = self.algebra.ring
            return Octonion(self.algebra, r.scale(r(other), self.coords))
        return Octonion(self.algebra, self.algebra.mul(self.coords, o))

    def __rmul__(self, other):
        r = self.algebra.ring
        return Octonion(self.algebra, r.scale(r(other), self.coords))

    def __eq__(self, other):
        if not isinstance(other, Octonion) or other.algebra != self.algebra:
            return False
        return self.algebra.ring.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(tuple(self.coords.tolist()))

    def __repr__(self):
        return f"Octonion[{self.algebra.name}]({self.algebra.format_element(self.coords)})"

    def conj(self):
        return Octonion(self.algebra, self.algebra.conj(self.coords))

    def norm(self):
        return self.algebra.norm(self.coords)

    def trace(self):
        return self.algebra.trace(self.coords)

    def inverse(self):
        return Octonion(self.algebra, self.algebra.inv(self.coords))


# --------------------------------------------------------------------------
# constructions


def _zorn_product(x, y):
    a1, b1, v1, w1 = x[0], x[1], x[2:5], x[5:8]
    a2, b2, v2, w2 = y[0], y[1], y[2:5], y[5:8]
    a = a1 * a2 + np.dot(v1, w2)
    v = a1 * v2 + b2 * v1 - np.cross(w1, w2)
    w = a2 * w1 + b1 * w2 + np.cross(v1, v2)
    b = b1 * b2 + np.dot(w1, v2)
    return np.concatenate([[a, b], v, w])


@lru_cache(maxsize=None)
def zorn(ring):
    """Split octonions as vector matrices [[a, v], [w, b]] with norm ab - v.w."""
    if isinstance(ring, str):
        ring = parse_ring(ring)
    eye = np.eye(DIM, dtype=np.int64)
    structure = np.array([[_zorn_product(eye[i], eye[j]) for j in range(DIM)] for i in range(DIM)])
    upper = np.zeros((DIM, DIM), dtype=np.int64)
    upper[0, 1] = 1
    for i in range(3):
        upper[2 + i, 5 + i] = -1
    norm = QuadraticForm(ring, ring.array(upper))
    unit = [1, 1, 0, 0, 0, 0, 0, 0]
    return OctonionAlgebra(ring, structure.tolist(), unit, norm, f"zorn({ring.spec})", ZORN_LABELS)


def _cd_tables(ring, params):
    """Multiplication and conjugation on R^(2^k) by iterated doubling.

    (a, b)(c, d) = (ac + g conj(d) b, d a + b conj(c)), conj(a, b) = (conj a, -b).
    """
    if not params:
        return (lambda x, y: [ring.mul(x[0], y[0])]), (lambda x: list(x))
    *inner, g = params
    mul, conj = _cd_tables(ring, tuple(inner))

    def add(x, y):
        return [ring.add(s, t) for s, t in zip(x, y)]

    def dmul(x, y):
        h = len(x) // 2
        a, b, c, d = x[:h], x[h:], y[:h], y[h:]
        left = add(mul(a, c), [ring.mul(g, s) for s in mul(conj(d), b)])
        right = add(mul(d, a), mul(b, conj(c)))
        return left + right

    def dconj(x):
        h = len(x) // 2
        return conj(x[:h]) + [ring.neg(s) for s in x[h:]]

    return dmul, dconj


@lru_cache(maxsize=None)
def cayley_dickson(ring, alpha, beta, gamma):
    """Triple doubling of the base ring; norm diag(<1,-alpha> x <1,-beta> x <1,-gamma>)."""
    if isinstance(ring, str):
        ring = parse_ring(ring)
    params = tuple(ring(p) for p in (alpha, beta, gamma))
    for p in params:
        if not ring.is_unit(p):
            raise NonUnitParameter(f"parameter {ring.format(p)} is not a unit in {ring.spec}")
    if not ring.is_unit(ring(2)):
        raise UnsupportedRing("the doubled norm is regular only when 2 is a unit")
    mul, _ = _cd_tables(ring, params)
    basis = [[ring.one if i == j else ring.zero for j in range(DIM)] for i in range(DIM)]
    structure = [[mul(basis[i], basis[j]) for j in range(DIM)] for i in range(DIM)]
    diag = [ring.one]
    for p in params:
        diag = diag + [ring.neg(ring.mul(p, d)) for d in diag]
    upper = ring.zeros((DIM, DIM))
    for i, d in enumerate(diag):
        upper[i, i] = d
    norm = QuadraticForm(ring, upper)
    unit = basis[0]
    name = "cd({},{})".format(ring.spec, ",".join(ring.format(p) for p in params))
    return OctonionAlgebra(ring, structure, unit, norm, name)


def parse_algebra(spec: str) -> OctonionAlgebra:
    """``zorn(<ring>)`` or ``cd(<ring>,alpha,beta,gamma)``."""
    s = spec.replace(" ", "")
    if s.startswith("zorn(") and s.endswith(")"):
        return zorn(parse_ring(s[5:-1]))
    if s.startswith("cd(") and s.endswith(")"):
        parts = s[3:-1].split(",")
        if len(parts) < 4:
            raise ValueError(f"cd needs a ring and three parameters: {spec!r}")
        ring = parse_ring(",".join(parts[:-3]))
        return cayley_dickson(ring, *(ring.parse(p) for p in parts[-3:]))
    raise ValueError(f"unrecognised algebra specification {spec!r}")
