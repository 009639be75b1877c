"""
Isotopes of the split octonions
===============================

Build zorn(Q), twist its product by a pair (a, b) and look at the maps
that identify the twisted algebra with the original.
"""

import numpy as np

from isotopy.isotope import Isotope, is_algebra_isomorphism, isotope_formula_maps, standard_form
from isotopy.octonion import parse_algebra
from isotopy.triality import basic_triple, iso_from_triple, triple_from_iso

C = parse_algebra("zorn(Q)")
rng = np.random.default_rng(1)

#%%
# Two invertible parameters.  The isotope has x*y = (xa)(by) and its own unit.
a = C.random_invertible(rng)
b = C.random_invertible(rng)
iso = Isotope(C, a, b)
print("a    =", C.format_element(a))
print("b    =", C.format_element(b))
print("unit =", C.format_element(iso.unit))

x, y = C.random(rng), C.random(rng)
print("unit * x == x:", C.ring.array_equal(iso.mul(iso.unit, x), x))

#%%
# The classical isomorphisms between isotopes, each checked on all 64 basis pairs.
for m in isotope_formula_maps(C, a, b):
    print(f"{m.check()!s:5}  {m.name}")

#%%
# Every isotope is isomorphic to one of the form C^{1,c}.
c, w = standard_form(C, a, b)
print("c =", C.format_element(c))
print("standard form map ok:", is_algebra_isomorphism(w, iso, Isotope(C, C.unit, c)))

#%%
# Norm-one parameters come from related triples: the first component of a
# basic triple is an isomorphism C -> C^{pi(t)}.
u = C.random_unit_norm(rng)
t = basic_triple(C, u)
pa, pb, f = iso_from_triple(t)
print("pi(t) =", C.format_element(pa), "|", C.format_element(pb))
print("rebuilt triple equals t:", triple_from_iso(C, f, pa, pb).equals(t))
