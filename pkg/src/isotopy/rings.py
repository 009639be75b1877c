"""Exact commutative rings.

A ring object is an arithmetic context.  Its elements are plain payloads:
``int`` for Z and Z/n, ``gmpy2.mpq`` for Q, and small element classes for
extension fields and (Laurent) polynomial rings.  Arrays of elements are
numpy arrays of dtype ``ring.dtype``; after arithmetic on arrays call
``ring.reduce`` to restore canonical form (a no-op except for Z/n).

Ring specification strings::

    "Z", "Q", "Z/8", "F5", "F9=x^2+1", "Q[t]", "Q[t,1/t]", "F3[t,1/t]"
"""

from __future__ import annotations

import itertools
import math
import re
from functools import cached_property, lru_cache

import gmpy2
import numpy as np

from .errors import NotInvertible, ParseError, UnsupportedRing

MAX_FIELD_SIZE = 343
TABLE_LIMIT = 1 << 20


class Ring:
    dtype = object
    is_field = False
    is_domain = False
    characteristic = 0
    order = None
    spec = "?"

    def __repr__(self):
        return f"{type(self).__name__}({self.spec!r})"

    def __str__(self):
        return self.spec

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def reduce(self, a):
        return a

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def mul(self, a, b):
        return self.reduce(a * b)

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero

    def eq(self, a, b):
        return self.is_zero(self.sub(a, b))

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def exact_div(self, a, b):
        """Return ``c`` with ``b*c == a``; raise ArithmeticError if none exists."""
        if self.is_field:
            return self.div(a, b)
        raise UnsupportedRing(f"exact division not available over {self.spec}")

    def is_nilpotent(self, a):
        return self.is_zero(a)

    # arrays -------------------------------------------------------------

    def array(self, data):
        raw = np.asarray(data, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for idx in np.ndindex(raw.shape):
            out[idx] = self(raw[idx])
        if self.dtype is object:
            return out
        return out.astype(self.dtype)

    def zeros(self, shape):
        if self.dtype is object:
            return np.full(shape, self.zero, dtype=object)
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n):
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def matmul(self, a, *rest):
        for b in rest:
            a = self.reduce(a @ b)
        return a

    def scale(self, s, a):
        return self.reduce(a * s)

    def is_unit_array(self, a):
        return np.asarray(np.frompyfunc(self.is_unit, 1, 1)(a), dtype=bool)

    def inv_array(self, a):
        """Elementwise inverse; raises NotInvertible if any entry is not a unit."""
        out = np.asarray(np.frompyfunc(self.inv, 1, 1)(a), dtype=object)
        return out if self.dtype is object else out.astype(self.dtype)

    def array_equal(self, a, b):
        return a.shape == b.shape and bool(np.all(a == b))

    def is_zero_array(self, a):
        return bool(np.all(a == self.zero))

    # elements -----------------------------------------------------------

    def random(self, rng, size=None):
        raise NotImplementedError

    def random_array(self, rng, shape):
        if self.dtype is not object:
            return self.random(rng, shape)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*np.atleast_1d(shape)):
            out[idx] = self.random(rng)
        return out

    def random_unit(self, rng):
        if self.order is not None:
            while True:
                a = self.random(rng)
                if self.is_unit(a):
                    return a
        raise NotImplementedError

    def elements(self):
        raise UnsupportedRing(f"{self.spec} is infinite")

    def index(self, a):
        raise UnsupportedRing(f"{self.spec} is infinite")

    def parse(self, text):
        return self(text)

    def format(self, a):
        return str(a)


class Integers(Ring):
    is_domain = True
    spec = "Z"

    def __call__(self, x):
        if isinstance(x, str):
            try:
                return int(x.strip())
            except ValueError:
                raise ParseError(f"not an integer: {x!r}") from None
        if isinstance(x, (int, np.integer)):
            return int(x)
        if isinstance(x, type(gmpy2.mpq())) and x.denominator == 1:
            return int(x.numerator)
        raise ParseError(f"cannot coerce {x!r} into Z")

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{a} is not a unit in Z", a)
        return a

    def random_unit(self, rng):
        return int(rng.choice([-1, 1]))

    def exact_div(self, a, b):
        if b == 0 or a % b:
            raise ArithmeticError(f"{b} does not divide {a} in Z")
        return a // b

    def random(self, rng, size=None):
        if size is None:
            return int(rng.integers(-3, 4))
        return self.array(rng.integers(-3, 4, size))


class Rationals(Ring):
    is_field = True
    is_domain = True
    spec = "Q"

    def __call__(self, x):
        try:
            if isinstance(x, str):
                return gmpy2.mpq(x.strip())
            if isinstance(x, np.integer):
                x = int(x)
            return gmpy2.mpq(x)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ParseError(f"cannot coerce {x!r} into Q") from None

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertible("0 is not invertible", a)
        return 1 / a

    def random(self, rng, size=None):
        if size is not None:
            return self.random_array(rng, size)
        return gmpy2.mpq(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))

    def random_unit(self, rng):
        return gmpy2.mpq(int(rng.choice([-3, -2, -1, 1, 2, 3])), int(rng.integers(1, 4)))


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n):
    return n >= 2 and _prime_factors(n) == [n]


class ModN(Ring):
    """Residues ``0 <= a < n`` stored as ``int64``."""

    dtype = np.int64

    def __init__(self, n):
        n = int(n)
        if n < 2:
            raise ValueError("ModN requires n >= 2")
        self.n = n
        self.characteristic = n
        self.order = n
        self.primes = tuple(_prime_factors(n))
        self.radical = math.prod(self.primes)
        self.is_field = self.is_domain = self.primes == (n,)
        # two's complement makes masking a valid reduction for powers of two
        self._mask = n - 1 if n & (n - 1) == 0 else None
        self.spec = f"Z/{n}"

    def __call__(self, x):
        if isinstance(x, str):
            try:
                return int(x.strip()) % self.n
            except ValueError:
                raise ParseError(f"not an integer residue: {x!r}") from None
        if isinstance(x, (int, np.integer)):
            return int(x) % self.n
        raise ParseError(f"cannot coerce {x!r} into {self.spec}")

    def reduce(self, a):
        if self._mask is not None:
            return a & self._mask
        return a % self.n

    def array(self, data):
        try:
            return np.asarray(data, dtype=np.int64) % self.n
        except (TypeError, ValueError):
            return super().array(data)

    def is_zero(self, a):
        return a % self.n == 0

    def is_unit(self, a):
        return math.gcd(int(a), self.n) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{a} is not a unit mod {self.n}", int(a))
        return pow(int(a), -1, self.n)

    def is_nilpotent(self, a):
        return int(a) % self.radical == 0

    @cached_property
    def _inverse_table(self):
        table = np.zeros(self.n, dtype=np.int64)
        for a in range(self.n):
            if math.gcd(a, self.n) == 1:
                table[a] = pow(a, -1, self.n)
        return table

    def is_unit_array(self, a):
        if self.n > TABLE_LIMIT:
            return super().is_unit_array(a)
        return self._inverse_table[np.asarray(a) % self.n] != 0

    def inv_array(self, a):
        if self.n > TABLE_LIMIT:
            return super().inv_array(a)
        a = np.asarray(a) % self.n
        out = self._inverse_table[a]
        bad = out == 0
        if np.any(bad):
            raise NotInvertible("array contains non-units", int(a[bad].flat[0]))
        return out

    def random(self, rng, size=None):
        if size is None:
            return int(rng.integers(0, self.n))
        return rng.integers(0, self.n, size).astype(np.int64)

    def elements(self):
        return range(self.n)

    def index(self, a):
        return int(a)

    def from_index(self, i):
        return int(i)

    def format(self, a):
        return str(int(a))


class PrimeField(ModN):
    def __init__(self, p):
        super().__init__(p)
        if not self.is_field:
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.modulus = (0, 1)
        self.spec = f"F{p}"


# --------------------------------------------------------------------------
# univariate text helpers shared by extension fields and polynomial rings

_TERM = re.compile(r"^(?P<coef>.*?)\*?(?P<var>[a-z])(\^(?P<exp>-?\d+))?$")


def _split_terms(text):
    text = text.replace(" ", "")
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and text[i - 1] not in "^(/*":
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    return [t for t in terms if t]


def _parse_univariate(text, var, parse_coef):
    """Parse ``text`` into a dict exponent -> coefficient string-parsed."""
    if not text.strip():
        raise ParseError("empty element")
    out = {}
    for term in _split_terms(text):
        sign = ""
        if term[0] in "+-":
            sign, term = term[0], term[1:]
        m = _TERM.match(term)
        if m and m.group("var") == var and not m.group("coef").endswith("/"):
            coef, exp = m.group("coef"), int(m.group("exp") or 1)
        else:
            coef, exp = term, 0
        if coef.startswith("(") and coef.endswith(")"):
            coef = coef[1:-1]
        if coef in ("", "+"):
            coef = "1"
        if sign == "-":
            coef = "-" + coef if not coef.startswith("-") else coef[1:]
        out[exp] = out.get(exp, []) + [parse_coef(coef)]
    return out


def _format_univariate(terms, var, fmt):
    """``terms``: list of (exponent, coefficient string), highest first."""
    parts = []
    for exp, c in terms:
        if exp == 0:
            body = c
        else:
            mono = var if exp == 1 else f"{var}^{exp}"
            if c == "1":
                body = mono
            elif c == "-1":
                body = "-" + mono
            elif re.fullmatch(r"-?[0-9/]+", c):
                body = c + mono
            else:
                body = f"({c}){mono}"
        parts.append(body)
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += p if p.startswith("-") else "+" + p
    return s


# --------------------------------------------------------------------------
# extension fields F_{p^k}


def _poly_mod_p(coeffs, p):
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


def _polydivmod_p(num, den, p):
    num = _poly_mod_p(num, p)
    den = _poly_mod_p(den, p)
    inv_lead = pow(den[-1], -1, p)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        f = num[-1] * inv_lead % p
        quo[shift] = f
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - f * d) % p
        num = _poly_mod_p(num, p)
    return quo, num


def is_irreducible(p, coeffs):
    """Brute-force factor search for a monic polynomial over F_p (low-to-high coefficients)."""
    f = _poly_mod_p(coeffs, p)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            _, rem = _polydivmod_p(f, g, p)
            if not rem:
                return False
    return True


class GFElement:
    __slots__ = ("field", "index")

    def __init__(self, field, index):
        self.field = field
        self.index = index

    def _other(self, other):
        if isinstance(other, GFElement):
            if other.field is not self.field:
                return NotImplemented
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.field(int(other)).index
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.field.elem[self.field.add_table[self.index][o]]

    __radd__ = __add__

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.field.elem[self.field.mul_table[self.index][o]]

    __rmul__ = __mul__

    def __neg__(self):
        return self.field.elem[self.field.neg_table[self.index]]

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return f.elem[f.add_table[self.index][f.neg_table[o]]]

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.index == o

    def __hash__(self):
        return hash(self.index)

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return self.field.format(self)


class ExtensionField(Ring):
    """F_q with q = p^k, k >= 2, with table-driven arithmetic.

    Elements are indexed by their coefficient vectors (c_0, ..., c_{k-1})
    in the basis 1, x, ..., x^{k-1}: index = sum c_i p^i.
    """

    is_field = True
    is_domain = True

    def __init__(self, p, modulus):
        modulus = tuple(int(c) % p for c in modulus)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        k = len(modulus) - 1
        if p**k > MAX_FIELD_SIZE:
            raise ValueError(f"fields larger than {MAX_FIELD_SIZE} are not supported")
        if not is_irreducible(p, modulus):
            raise ValueError(f"{modulus} is reducible over F_{p}")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = modulus
        self.characteristic = p
        self.order = self.q
        vecs = [self._vector(i) for i in range(self.q)]
        self.add_table = [
            [self._encode([(a + b) % p for a, b in zip(u, v)]) for v in vecs] for u in vecs
        ]
        self.neg_table = [self._encode([(-a) % p for a in u]) for u in vecs]
        self.mul_table = [[self._encode(self._polymul(u, v)) for v in vecs] for u in vecs]
        self.inv_table = [None] + [
            next(j for j in range(1, self.q) if self.mul_table[i][j] == 1) for i in range(1, self.q)
        ]
        self.elem = [GFElement(self, i) for i in range(self.q)]
        self.spec = f"F{self.q}=" + _format_univariate(
            [(e, str(c)) for e, c in reversed(list(enumerate(modulus))) if c], "x", str
        )

    def _vector(self, index):
        out = []
        for _ in range(self.k):
            index, r = divmod(index, self.p)
            out.append(r)
        return out

    def _encode(self, vec):
        return sum(c * self.p**i for i, c in enumerate(vec))

    def _polymul(self, u, v):
        prod = [0] * (2 * self.k - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                prod[i + j] = (prod[i + j] + a * b) % self.p
        _, rem = _polydivmod_p(prod, list(self.modulus), self.p)
        return rem + [0] * (self.k - len(rem))

    def __call__(self, x):
        if isinstance(x, GFElement):
            if x.field is not self:
                raise ParseError(f"element of {x.field.spec} is not in {self.spec}")
            return x
        if isinstance(x, (int, np.integer)):
            return self.elem[int(x) % self.p]
        if isinstance(x, str):
            return self.parse(x)
        raise ParseError(f"cannot coerce {x!r} into {self.spec}")

    def parse(self, text):
        terms = _parse_univariate(text, "x", lambda c: int(c))
        vec = [0] * (2 * self.k)
        acc = [0]
        for exp, cs in terms.items():
            if exp < 0:
                raise ParseError("negative powers of x are not allowed")
            mono = [0] * exp + [sum(cs) % self.p]
            _, rem = _polydivmod_p(mono, list(self.modulus), self.p)
            acc = [(a + b) % self.p for a, b in itertools.zip_longest(acc, rem, fillvalue=0)]
        vec = (acc + [0] * self.k)[: self.k]
        return self.elem[self._encode(vec)]

    def format(self, a):
        vec = self._vector(a.index)
        return _format_univariate([(e, str(c)) for e, c in reversed(list(enumerate(vec))) if c], "x", str)

    def is_zero(self, a):
        return a.index == 0

    def is_unit(self, a):
        return a.index != 0

    def inv(self, a):
        if a.index == 0:
            raise NotInvertible("0 is not invertible", a)
        return self.elem[self.inv_table[a.index]]

    def random(self, rng, size=None):
        if size is not None:
            return self.random_array(rng, size)
        return self.elem[int(rng.integers(0, self.q))]

    def elements(self):
        return list(self.elem)

    def index(self, a):
        return a.index

    def from_index(self, i):
        return self.elem[int(i)]


def default_modulus(p, k):
    """Lexicographically first monic irreducible of degree k over F_p."""
    for tail in itertools.product(range(p), repeat=k):
        coeffs = tuple(reversed(tail)) + (1,)
        if is_irreducible(p, coeffs):
            return coeffs
    raise ValueError("no irreducible polynomial found")


def FiniteField(p, modulus=None):
    """F_p when ``modulus`` is None or linear, otherwise F_p[x]/(modulus)."""
    if modulus is None or len(modulus) <= 2:
        return PrimeField(p)
    return ExtensionField(p, modulus)


# --------------------------------------------------------------------------
# polynomial and Laurent polynomial rings


class PolyElement:
    """``sum coeffs[i] * t^(low+i)`` with nonzero first and last coefficient."""

    __slots__ = ("ring", "low", "coeffs")

    def __init__(self, ring, low, coeffs):
        self.ring = ring
        self.low = low
        self.coeffs = coeffs

    @property
    def high(self):
        return self.low + len(self.coeffs) - 1

    def _other(self, other):
        if isinstance(other, PolyElement):
            return other if other.ring == self.ring else NotImplemented
        try:
            return self.ring(other)
        except ParseError:
            return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring._add(self, o)

    __radd__ = __add__

    def __neg__(self):
        base = self.ring.base
        return PolyElement(self.ring, self.low, tuple(base.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring._add(self, -o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring._mul(self, o)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.low == o.low and self.coeffs == o.coeffs

    def __hash__(self):
        if not self.coeffs:
            return hash(0)
        if self.low == 0 and len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash((self.low, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return self.ring.format(self)


class PolynomialRing(Ring):
    """R[t] (``laurent=False``) or R[t, 1/t] (``laurent=True``)."""

    def __init__(self, base, laurent=False):
        self.base = base
        self.laurent = laurent
        self.is_domain = base.is_domain
        self.characteristic = base.characteristic
        self.spec = f"{base.spec}[t,1/t]" if laurent else f"{base.spec}[t]"

    def _make(self, low, coeffs):
        base = self.base
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and base.is_zero(coeffs[start]):
            start += 1
        end = len(coeffs)
        while end > start and base.is_zero(coeffs[end - 1]):
            end -= 1
        coeffs = tuple(coeffs[start:end])
        low = low + start if coeffs else 0
        if low < 0 and not self.laurent:
            raise ParseError(f"negative power of t in {self.spec}")
        return PolyElement(self, low, coeffs)

    def __call__(self, x):
        if isinstance(x, PolyElement):
            if x.ring != self:
                raise ParseError(f"element of {x.ring.spec} is not in {self.spec}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self._make(0, (self.base(x),))

    def monomial(self, c, exp):
        return self._make(exp, (self.base(c),))

    def _add(self, a, b):
        if not a.coeffs:
            return b
        if not b.coeffs:
            return a
        base = self.base
        lo = min(a.low, b.low)
        hi = max(a.high, b.high)
        out = [base.zero] * (hi - lo + 1)
        for p in (a, b):
            for i, c in enumerate(p.coeffs):
                k = p.low - lo + i
                out[k] = base.add(out[k], c)
        return self._make(lo, out)

    def _mul(self, a, b):
        if not a.coeffs or not b.coeffs:
            return self._make(0, ())
        base = self.base
        out = [base.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                out[i + j] = base.add(out[i + j], base.mul(x, y))
        return self._make(a.low + b.low, out)

    def is_zero(self, a):
        return not a.coeffs

    def _unit_shape(self, coeffs_low):
        # a polynomial is a unit iff modulo every prime of the base it is a
        # unit monomial (Laurent) or a nonzero constant (polynomial)
        low, coeffs = coeffs_low
        base = self.base
        if base.is_domain:
            return len(coeffs) == 1 and base.is_unit(coeffs[0]) and (self.laurent or low == 0)
        if isinstance(base, ModN):
            for p in base.primes:
                nz = [i for i, c in enumerate(coeffs) if int(c) % p]
                if len(nz) != 1 or (not self.laurent and low + nz[0] != 0):
                    return False
            return True
        raise UnsupportedRing(f"unit test not implemented over {self.spec}")

    def is_unit(self, a):
        if not a.coeffs:
            return False
        return self._unit_shape((a.low, a.coeffs))

    def is_nilpotent(self, a):
        return all(self.base.is_nilpotent(c) for c in a.coeffs)

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertible(f"{self.format(a)} is not a unit in {self.spec}", a)
        base = self.base
        if base.is_domain:
            return self._make(-a.low, (base.inv(a.coeffs[0]),))
        # initial inverse modulo the radical, glued by CRT, then Newton steps
        guess = self._make(0, ())
        for p in base.primes:
            e = base.radical // p
            idem = e * pow(e, -1, p) % base.n
            i = next(i for i, c in enumerate(a.coeffs) if int(c) % p)
            c = int(a.coeffs[i]) % p
            guess = guess + self.monomial(idem * pow(c, -1, p), -(a.low + i))
        two = self(2)
        for _ in range(64):
            err = a * guess - self.one
            if not err.coeffs:
                return guess
            guess = guess * (two - a * guess)
        raise ArithmeticError("Newton iteration failed to converge")

    def exact_div(self, a, b):
        if not b.coeffs:
            raise ArithmeticError("division by zero")
        if not a.coeffs:
            return a
        base = self.base
        num = list(a.coeffs)
        den = b.coeffs
        shift_total = a.low - b.low
        quo = [base.zero] * max(len(num) - len(den) + 1, 0)
        while len(num) >= len(den) and any(not base.is_zero(c) for c in num):
            s = len(num) - len(den)
            f = base.exact_div(num[-1], den[-1])
            quo[s] = f
            for i, d in enumerate(den):
                num[s + i] = base.sub(num[s + i], base.mul(f, d))
            while num and base.is_zero(num[-1]):
                num.pop()
        if any(not base.is_zero(c) for c in num):
            raise ArithmeticError("inexact polynomial division")
        return self._make(shift_total, quo)

    def random(self, rng, size=None):
        if size is not None:
            return self.random_array(rng, size)
        low = int(rng.integers(-1, 2)) if self.laurent else 0
        deg = int(rng.integers(0, 3))
        return self._make(low, [self.base.random(rng) for _ in range(deg + 1)])

    def random_unit(self, rng):
        exp = int(rng.integers(-2, 3)) if self.laurent else 0
        return self.monomial(self.base.random_unit(rng), exp)

    def parse(self, text):
        terms = _parse_univariate(text, "t", self.base.parse)
        out = self._make(0, ())
        for exp, cs in terms.items():
            for c in cs:
                out = out + self.monomial(c, exp)
        return out

    def format(self, a):
        terms = [
            (a.low + i, self.base.format(c)) for i, c in enumerate(a.coeffs) if not self.base.is_zero(c)
        ]
        return _format_univariate(list(reversed(terms)), "t", None)


def Poly(base):
    return PolynomialRing(base, laurent=False)


def Laurent(base):
    return PolynomialRing(base, laurent=True)


# --------------------------------------------------------------------------

Z = Integers()
QQ = Rationals()


@lru_cache(maxsize=None)
def parse_ring(spec: str) -> Ring:
    """Parse a ring specification string such as ``"F9=x^2+1"`` or ``"Q[t,1/t]"``."""
    s = spec.replace(" ", "")
    if s.endswith("[t,1/t]"):
        return Laurent(parse_ring(s[: -len("[t,1/t]")]))
    if s.endswith("[t]"):
        return Poly(parse_ring(s[:-3]))
    if s in ("Z", "ZZ"):
        return Z
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"Z/(\d+)", s)
    if m:
        return ModN(int(m.group(1)))
    m = re.fullmatch(r"F(\d+)(?:=(.+))?", s)
    if m:
        q = int(m.group(1))
        primes = _prime_factors(q)
        if len(primes) != 1:
            raise ParseError(f"{q} is not a prime power")
        p = primes[0]
        k = round(math.log(q, p))
        if k == 1:
            return PrimeField(p)
        if m.group(2):
            terms = _parse_univariate(m.group(2), "x", int)
            coeffs = [0] * (max(terms) + 1)
            for e, cs in terms.items():
                coeffs[e] = sum(cs) % p
            if len(coeffs) - 1 != k:
                raise ParseError(f"modulus degree must be {k} for F{q}")
            return ExtensionField(p, coeffs)
        return ExtensionField(p, default_modulus(p, k))
    raise ParseError(f"unrecognised ring specification {spec!r}")
