"""The cobar construction and the homology of based loops on spheres."""
from cobarkit.chain_algebra import homology
from cobarkit.cobar import TruncationPolicy, cobar_basis, cobar_complex, cobar_differential
from cobarkit.simplicial import builtin_space

T = builtin_space("torus")
print("D[t1] on the torus:", cobar_differential(("t1",), T))
print("D[t1|a]:          ", cobar_differential(("t1", "a"), T))

P = builtin_space("rp2")
print("D[sigma] on rp2:  ", cobar_differential(("sigma",), P))

# With no edges, unbounded word length is fine: degree bounds length.
for n in (2, 3):
    S = builtin_space(f"sphere:{n}")
    C = cobar_complex(S, TruncationPolicy(7))
    H = homology(C, range(7))
    print(f"\nH_*(Ω S^{n}) in degrees 0..6")
    print(H.table())

# The wedge of two circles has a free H_0, truncated at length 4
W = builtin_space("wedge-circles:2")
print("\ndegree-0 basis of the wedge, length <= 2:", cobar_basis(W, 0, TruncationPolicy(0, 2)))
print(homology(cobar_complex(W, TruncationPolicy(3, 4)), range(3)).table())
