"""Unit spheres of the split octonions over small finite fields and the
orbits of sphere pairs under related triples.

Points are stored as arrays of element indices (0..q-1), so all
arithmetic below is table lookups on integer arrays and works the same way
for prime and non-prime fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotReached, PreconditionFailed, UnsupportedFieldSize
from .isotope import Isotope
from .octonion import DIM, zorn
from .rings import parse_ring
from .triality import RelatedTriple, basic_triple
from .trivialization import IsoWitness

SUPPORTED_Q = (2, 3, 4, 5, 7)
MAX_ORBIT_PAIRS = 2_000_000
BFS_CHUNK = 1 << 23

# the Zorn norm is x0 x1 - x2 x5 - x3 x6 - x4 x7: a hyperbolic form on V + V*
_V = (0, 2, 3, 4)
_W = (1, 5, 6, 7)
_SIGN = (1, -1, -1, -1)


def sphere_size(q):
    return q**3 * (q**4 - 1)


class _Tables:
    """Field arithmetic on element indices."""

    def __init__(self, ring):
        els = list(ring.elements())
        q = len(els)
        idx = ring.index
        self.ring = ring
        self.q = q
        self.elements = els
        self.add = np.array([[idx(ring.add(a, b)) for b in els] for a in els], dtype=np.int64)
        self.mul = np.array([[idx(ring.mul(a, b)) for b in els] for a in els], dtype=np.int64)
        self.neg = np.array([idx(ring.neg(a)) for a in els], dtype=np.int64)
        self.inv = np.array([idx(ring.inv(a)) if not ring.is_zero(a) else -1 for a in els], dtype=np.int64)
        self.zero = idx(ring.zero)
        self.one = idx(ring.one)

    def from_ring(self, arr):
        arr = np.asarray(arr)
        return np.vectorize(self.ring.index, otypes=[np.int64])(arr) if arr.dtype == object else arr.astype(np.int64)

    def to_ring(self, idx):
        if self.ring.dtype is object:
            return self.ring.array(np.array(self.elements, dtype=object)[idx])
        return np.asarray(idx, dtype=np.int64)

    def apply(self, m, x):
        """y[..., g, n, k] = sum_l m[g, k, l] x[n, l] for index matrices m (G, 8, 8) and points x (N, 8)."""
        out = None
        for col in range(m.shape[-1]):
            term = self.mul[m[:, None, :, col], x[None, :, col, None]]
            out = term if out is None else self.add[out, term]
        return out


@dataclass
class SpherePointTable:
    q: int
    algebra: object
    points: np.ndarray  # element indices, shape (N, 8), sorted by code
    codes: np.ndarray
    tables: _Tables = field(repr=False)

    def __len__(self):
        return len(self.points)

    def encode(self, idx):
        return (np.asarray(idx, dtype=np.int64) * (self.q ** np.arange(DIM, dtype=np.int64))).sum(axis=-1)

    def lookup(self, idx):
        """Positions of index vectors (..., 8); -1 where not on the sphere."""
        c = self.encode(idx)
        pos = np.searchsorted(self.codes, c)
        pos = np.minimum(pos, len(self.codes) - 1)
        return np.where(self.codes[pos] == c, pos, -1)

    def index_of(self, x):
        """Position of a ring element on the sphere, or -1."""
        return int(self.lookup(self.tables.from_ring(self.algebra.ring.array(x))))

    def element(self, i):
        return self.tables.to_ring(self.points[i])

    def elements(self):
        return self.tables.to_ring(self.points)


def _norm_indices(t, pts):
    acc = None
    for i, j, s in zip(_V, _W, _SIGN):
        term = t.mul[pts[..., i], pts[..., j]]
        if s < 0:
            term = t.neg[term]
        acc = term if acc is None else t.add[acc, term]
    return acc


def _scan(t):
    q = t.q
    n = np.arange(q**DIM, dtype=np.int64)
    pts = (n[:, None] // q ** np.arange(DIM, dtype=np.int64)) % q
    return pts[_norm_indices(t, pts) == t.one]


def _hyperbolic(t):
    """(v, w) with v != 0 in V and sum s_i v_i w_i = 1, solving for the first w_k with v_k != 0."""
    q = t.q
    vs = (np.arange(1, q**4, dtype=np.int64)[:, None] // q ** np.arange(4, dtype=np.int64)) % q
    free = (np.arange(q**3, dtype=np.int64)[:, None] // q ** np.arange(3, dtype=np.int64)) % q
    sign = np.array([t.one if s > 0 else t.neg[t.one] for s in _SIGN])
    blocks = []
    for v in vs:
        k = int(np.flatnonzero(v != t.zero)[0])
        others = [i for i in range(4) if i != k]
        w = np.zeros((len(free), 4), dtype=np.int64)
        w[:, others] = free
        acc = np.full(len(free), t.zero, dtype=np.int64)
        for i in others:
            acc = t.add[acc, t.mul[t.mul[sign[i], v[i]], w[:, i]]]
        rhs = t.add[t.one, t.neg[acc]]
        w[:, k] = t.mul[rhs, t.inv[t.mul[sign[k], v[k]]]]
        pts = np.zeros((len(free), DIM), dtype=np.int64)
        pts[:, list(_V)] = v
        pts[:, list(_W)] = w
        blocks.append(pts)
    return np.concatenate(blocks)


@lru_cache(maxsize=None)
def enumerate_sphere(q, method="auto"):
    """All norm-one points of zorn(F_q).

    ``method`` is "scan" (all of F_q^8), "hyperbolic" (parametrize by
    v != 0 and an affine solution space for w) or "auto" (scan for q <= 3).
    """
    if q not in SUPPORTED_Q:
        raise UnsupportedFieldSize(f"q = {q} is not one of {SUPPORTED_Q}")
    if method == "auto":
        method = "scan" if q <= 3 else "hyperbolic"
    ring = parse_ring(f"F{q}")
    t = _Tables(ring)
    if method == "scan":
        pts = _scan(t)
    elif method == "hyperbolic":
        pts = _hyperbolic(t)
    else:
        raise ValueError(f"unknown method {method!r}")
    if len(pts) != sphere_size(q):
        raise AssertionError(f"found {len(pts)} sphere points, expected {sphere_size(q)}")
    table = SpherePointTable(q, zorn(ring), pts, None, t)
    codes = table.encode(pts)
    order = np.argsort(codes)
    table.points = pts[order]
    table.codes = codes[order]
    if len(np.unique(table.codes)) != len(pts):
        raise AssertionError("duplicate sphere points")
    return table


# -------------------------------------------------------------------------
# orbits


def default_generators(table, points=None):
    """basic_triple(c) and its two rotations for every sphere point c.

    ``points`` restricts c to the given sphere indices.  Generator 3 i + r
    is the r-th rotation of the basic triple of the i-th chosen point.
    """
    C = table.algebra
    pts = table.elements() if points is None else table.elements()[np.asarray(points)]
    t1, t2, t3 = basic_triple(C, pts).components()
    rot = [(t1, t2, t3), (t2, t3, t1), (t3, t1, t2)]
    shape = (3 * len(pts), DIM, DIM)
    return RelatedTriple(*(np.stack([r[k] for r in rot], axis=1).reshape(shape) for k in range(3)), C)


def generator_labels(table, points=None):
    C = table.algebra
    idx = range(len(table)) if points is None else points
    return [f"rotation {k} of basic triple of c = {C.format_element(table.element(int(i)))}"
            for i in idx for k in range(3)]


def _permutations(table, mats):
    t = table.tables
    images = t.apply(t.from_ring(mats), table.points)
    perm = table.lookup(images)
    if np.any(perm < 0):
        raise AssertionError("a generator does not preserve the sphere")
    return perm


@dataclass
class Orbit:
    table: SpherePointTable
    generators: RelatedTriple
    start: tuple
    parent: np.ndarray
    via: np.ndarray
    levels: list
    labels: list = None

    @property
    def size(self):
        return int(np.count_nonzero(self.parent >= 0))

    def pair_index(self, i, j):
        return i * len(self.table) + j

    def contains(self, i, j):
        return bool(self.parent[self.pair_index(i, j)] >= 0)

    def word(self, i, j):
        """Generator indices g_1, ..., g_k with g_k ... g_1 . start = (i, j)."""
        p = self.pair_index(i, j)
        if self.parent[p] < 0:
            raise NotReached(f"pair ({i}, {j}) is not in the orbit")
        out = []
        while self.via[p] >= 0:
            out.append(int(self.via[p]))
            p = int(self.parent[p])
        return out[::-1]

    def triple(self, word):
        C = self.table.algebra
        r = C.ring
        g = self.generators
        m = [r.eye(DIM) for _ in range(3)]
        for k in word:
            m = [r.matmul(gk[k], mk) for gk, mk in zip((g.t1, g.t2, g.t3), m)]
        return RelatedTriple(*m, C)

    def all_triples(self):
        """For every orbit pair p, the product of its word (t1, t2, t3), as (n_pairs, 8, 8) stacks.

        Returned with the pair indices in BFS order.
        """
        C = self.table.algebra
        r = C.ring
        g = self.generators
        total = len(self.parent)
        pos = np.full(total, -1, dtype=np.int64)
        order = np.concatenate(self.levels)
        pos[order] = np.arange(len(order))
        out = [r.zeros((len(order), DIM, DIM)) for _ in range(3)]
        for k in range(3):
            out[k][0] = r.eye(DIM)
        for level in self.levels[1:]:
            par = pos[self.parent[level]]
            via = self.via[level]
            dst = pos[level]
            for k, gk in enumerate((g.t1, g.t2, g.t3)):
                out[k][dst] = r.reduce(gk[via] @ out[k][par])
        return order, RelatedTriple(*out, C)


def orbit_of_pair(table, generators=None, start=None, max_pairs=MAX_ORBIT_PAIRS, points=None, labels=None):
    """Breadth-first closure of t.(u, v) = (t3 u, t2 v) from ``start`` (default (1, 1)).

    Without ``generators`` the default set is used, restricted to the
    sphere indices ``points`` when given.
    """
    C = table.algebra
    n = len(table)
    if n * n > max_pairs:
        raise UnsupportedFieldSize(f"{n * n} sphere pairs exceed the ceiling of {max_pairs}")
    if generators is None:
        generators = default_generators(table, points)
        labels = generator_labels(table, points)
    if generators.t1.ndim == 2:
        generators = RelatedTriple(*(t[None] for t in generators.components()), C)
    if start is None:
        one = table.index_of(C.unit)
        start = (one, one)
    p3 = _permutations(table, generators.t3)
    p2 = _permutations(table, generators.t2)
    ng = len(p3)
    parent = np.full(n * n, -1, dtype=np.int64)
    via = np.full(n * n, -1, dtype=np.int64)
    p0 = start[0] * n + start[1]
    parent[p0] = p0
    frontier = np.array([p0], dtype=np.int64)
    levels = [frontier]
    while frontier.size:
        fu, fv = np.divmod(frontier, n)
        found = []
        # generator blocks keep the candidate array below BFS_CHUNK entries
        step = max(1, BFS_CHUNK // frontier.size)
        for g0 in range(0, ng, step):
            g1 = min(ng, g0 + step)
            new = (p3[g0:g1, fu] * n + p2[g0:g1, fv]).ravel()
            src = np.broadcast_to(frontier, (g1 - g0, frontier.size)).ravel()
            g = np.repeat(np.arange(g0, g1, dtype=np.int64), frontier.size)
            fresh = parent[new] < 0
            new, src, g = new[fresh], src[fresh], g[fresh]
            uniq, first = np.unique(new, return_index=True)
            parent[uniq] = src[first]
            via[uniq] = g[first]
            found.append(uniq)
        frontier = np.sort(np.concatenate(found))
        if frontier.size:
            levels.append(frontier)
    return Orbit(table, generators, tuple(start), parent, via, levels, labels)


def default_points(q):
    """Sphere indices whose basic triples generate the orbit: all of them at
    q = 2, ten evenly spaced points above (enough at q = 3, where the orbit
    size certifies it)."""
    n = len(enumerate_sphere(q))
    if q == 2:
        return None
    return tuple(range(0, n, n // 10)[:10])


@lru_cache(maxsize=None)
def default_orbit(q, max_pairs=MAX_ORBIT_PAIRS):
    return orbit_of_pair(enumerate_sphere(q), max_pairs=max_pairs, points=default_points(q))


def isotope_witness_via_orbit(q, a, b, orbit=None, max_pairs=MAX_ORBIT_PAIRS):
    """An isomorphism C -> C^{a,b} read off a generator word reaching (a, b) from (1, 1)."""
    table = enumerate_sphere(q)
    C = table.algebra
    r = C.ring
    i, j = table.index_of(a), table.index_of(b)
    if i < 0 or j < 0:
        raise PreconditionFailed("a and b must lie on the unit sphere", {"a": C.format_element(a), "b": C.format_element(b)})
    orbit = orbit or default_orbit(q, max_pairs)
    word = orbit.word(i, j)
    t = orbit.triple(word)
    x, y = t.pi()
    if not (r.array_equal(x, r.array(a)) and r.array_equal(y, r.array(b))):
        raise AssertionError("word does not reach the target pair")
    trace = [orbit.labels[k] if orbit.labels else f"generator {k}" for k in word]
    w = IsoWitness(t.t1, C, Isotope(C, r.array(a), r.array(b)), trace)
    if not w.check():
        raise AssertionError("orbit witness is not an isomorphism")
    return w
