"""
Spin elements and related triples
=================================

Realize the Clifford algebra of the octonion norm as 16x16 matrices and
pass back and forth between spin elements and related triples.
"""

import numpy as np

from isotopy.clifford import alpha, is_spin, spin_from_triple, spin_generator, triple_from_spin
from isotopy.octonion import parse_algebra
from isotopy.triality import random_related_triple

C = parse_algebra("cd(Q,-1,-1,-1)")
r = C.ring
rng = np.random.default_rng(5)

#%%
# alpha(x) squares to q(x).
x = C.random(rng)
ax = alpha(C, x)
print("q(x) =", r.format(C.norm(x)))
print("alpha(x)^2 == q(x) I:", r.array_equal(r.matmul(ax, ax), r.scale(C.norm(x), r.eye(16))))

#%%
# A product alpha(x) alpha(y) with q(x) q(y) = 1 is a spin element.
x, y = C.random_unit_norm(rng), C.random_unit_norm(rng)
u = spin_generator(C, x, y)
print("spin:", is_spin(C, u))
t = triple_from_spin(C, u)
print("triple related:", t.is_related())

#%%
# The correspondence is multiplicative and invertible.
s, t = random_related_triple(C, rng, 2), random_related_triple(C, rng, 2)
lhs = spin_from_triple(s * t)
rhs = r.matmul(spin_from_triple(s), spin_from_triple(t))
print("spin(s t) == spin(s) spin(t):", r.array_equal(lhs, rhs))
print("round trip:", triple_from_spin(C, spin_from_triple(s)).equals(s))
