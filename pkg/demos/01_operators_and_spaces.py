"""Simplicial operators in normal form, and the catalog of small spaces."""
from cobarkit.simplicial import (SimplicialOperator, apply_face, builtin_space,
                                 front_back_restrictions, validate)

# Words are read right to left: this is "apply s1, then d0".
op = SimplicialOperator.from_word([("d", 0), ("s", 1)], 2)
print("d0 s1 =", op)                      # s0d0

op = SimplicialOperator.from_word([("d", 1), ("d", 1)], 3)
print("d1 d1 =", op)                      # d1d2

# A longer word collapses to degeneracies-then-faces
op = SimplicialOperator.from_word([("d", 2), ("s", 0), ("d", 0), ("s", 2), ("s", 1)], 2)
print("d2 s0 d0 s2 s1 =", op, "  (", op.source_dim, "->", op.target_dim, ")")

# The torus: one vertex, three edges, two triangles
T = builtin_space("torus")
print()
print(T)
for sid in T.simplices[2]:
    r = T.ref(sid)
    faces = [str(apply_face(i, r, T)) for i in range(3)]
    front, back = front_back_restrictions(r, 1, T)
    print(f"  {sid}: faces {faces}, front/back edges {front}, {back}")
print("identities hold:", validate(T).ok)

# RP^2 has a degenerate inner face; the 2-sphere has only degenerate faces
for name in ("rp2", "sphere:2"):
    K = builtin_space(name)
    r = K.ref("sigma")
    print(name, [str(apply_face(i, r, K)) for i in range(3)])
