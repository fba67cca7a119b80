"""The cubical necklace model F^□ and the isomorphism φ onto the cobar construction."""
from cobarkit.chain_algebra import homology
from cobarkit.cobar import TruncationPolicy, apply_differential, cobar_complex
from cobarkit.necklace import (fsq_complex, fsq_differential, phi, phi_combination,
                               verify_phi)
from cobarkit.simplicial import builtin_space

for name, word in (("sphere:2", ("sigma",)), ("rp2", ("sigma",)), ("torus", ("t1",)),
                   ("torus", ("t1", "t2"))):
    K = builtin_space(name)
    d = fsq_differential(word, K)
    print(f"{name:9s} ∂{word} = {d}")
    print(f"{'':9s} φ∂ = {phi_combination(d, K)}")
    print(f"{'':9s} Dφ = {apply_differential(phi(word, K), K)}")

K = builtin_space("torus")
print("\nφ(a∨b) =", phi(("a", "b"), K))

report = verify_phi(K, TruncationPolicy(3, 5), pairs=100, seed=1)
print("\nverify_phi on the torus:", report.to_dict())

# rp2 has a degenerate edge inside sigma, so long words are divided out
# through φ rather than simply dropped; the homologies then agree exactly.
P = builtin_space("rp2")
policy = TruncationPolicy(4, 4)
print("\nrp2, truncated at length 4")
print("cobar:", [str(g) for g in homology(cobar_complex(P, policy), range(4)).groups])
print("fsq:  ", [str(g) for g in homology(fsq_complex(P, policy), range(4)).groups])
