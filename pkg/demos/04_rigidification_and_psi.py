"""Necklace colimits of cubes and the comparison map ψ."""
from cobarkit.chain_algebra import homology
from cobarkit.chains import CubeSimplex, interval_edge
from cobarkit.cobar import TruncationPolicy
from cobarkit.rigid import (canonical, cell_boundary, identification_closure, psi,
                            rigid_chain_complex, rigid_product, verify_psi)
from cobarkit.simplicial import builtin_space

S = builtin_space("sphere:2")
# Both ends of the 1-cube of (sigma) are identified with the unit
print("vertex 0 of (sigma):", canonical(("sigma",), CubeSimplex(1, ((0,),)), S))
print("vertex 1 of (sigma):", canonical(("sigma",), CubeSimplex(1, ((1,),)), S))
print("∂[(sigma), e] =", cell_boundary((("sigma",), interval_edge()), S))

C = rigid_chain_complex(S, 4, TruncationPolicy(4))
print("\nrigid model of S^2, cube dimension <= 4")
print(homology(C, range(4)).table())

T = builtin_space("torus")
print("\nψ(t1∨t2) has", len(psi(("t1", "t2"), T)), "cells")
x, y = psi(("t1",), T), psi(("a",), T)
print("direct product matches ψ(t1∨a):  ", rigid_product(x, y, T, "direct") == psi(("t1", "a"), T))
print("reversed product matches ψ(a∨t1):", rigid_product(x, y, T, "reversed") == psi(("a", "t1"), T))

for name, degree, policy in (("sphere:2", 2, TruncationPolicy(2)),
                             ("wedge-circles:2", 0, TruncationPolicy(0, 3)),
                             ("torus", 1, TruncationPolicy(1, 3)),
                             ("rp2", 1, TruncationPolicy(1, 3))):
    rep = verify_psi(builtin_space(name), degree, policy)
    print(f"\n{name}: ok={rep.ok} chain_map={rep.chain_map} product={rep.product_relation}")
    if rep.skipped:
        print("  skipped:", rep.skipped)
    else:
        print("  rigid:", [g["free_rank"] for g in rep.rigid_ranks],
              " fsq:", [g["free_rank"] for g in rep.fsq_ranks])

print("\nunion-find closure on S^2:", identification_closure(S, 3, TruncationPolicy(3)).to_dict())
