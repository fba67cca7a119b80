"""Degree-zero homology as a ring: generators, relations and the monoid form."""
from cobarkit.cobar import h0_ring_presentation
from cobarkit.simplicial import builtin_space, collapsed_simplex

for name in ("rp2", "torus", "wedge-circles:2", "sphere:2"):
    print(h0_ring_presentation(builtin_space(name)).text())
    print()

# Every triangle of a collapsed simplex gives a "composition" relation
print(h0_ring_presentation(collapsed_simplex(3)).text())
