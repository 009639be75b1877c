"""
Orbits on pairs of norm-one points over small fields
====================================================

Count the unit sphere of zorn(F_q), run a breadth-first search of the
triality action on pairs, and read an explicit isomorphism off a word.
"""

import time

from isotopy.orbits import default_orbit, enumerate_sphere, isotope_witness_via_orbit, sphere_size
from isotopy.trivialization import field_trivialize

for q in (2, 3, 4, 5, 7):
    print(f"q={q}: {len(enumerate_sphere(q)):7d} points (expected {sphere_size(q)})")

#%%
# Over F2 the orbit of (1, 1) is every pair of sphere points.
start = time.perf_counter()
orbit = default_orbit(2)
print(f"orbit size {orbit.size} of {sphere_size(2) ** 2} in {time.perf_counter() - start:.2f}s")

#%%
# A generator word for a target pair gives an isomorphism C -> C^{a,b}.
table = orbit.table
C = table.algebra
a, b = table.element(10), table.element(77)
w = isotope_witness_via_orbit(2, a, b, orbit)
print("target:", C.format_element(a), "|", C.format_element(b))
print("word length:", len(w.trace), " isomorphism:", w.check())

#%%
# Over a field, C^{a, conj a} is reached directly by a two-step chain.
C3 = enumerate_sphere(3).algebra
a = C3.parse_element("1,1,1,0,0,0,0,0").coords
w = field_trivialize(C3, a)
print("\n".join(w.trace), "\nisomorphism:", w.check())
