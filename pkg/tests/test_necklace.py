import random

import pytest

from cobarkit.chain_algebra import Combination, homology, verify_complex
from cobarkit.cobar import TruncationPolicy, apply_differential, cobar_complex, multiply
from cobarkit.necklace import (bead_boundary, fsq_basis, fsq_complex, fsq_differential,
                               fsq_product, necklace_dim, phi, resolve_truncation,
                               square_zero_check, verify_phi)
from cobarkit.simplicial import builtin_space


def test_necklace_dim():
    assert necklace_dim([2, 3]) == 3
    assert necklace_dim([1]) == 0
    assert necklace_dim([5]) == 4
    assert necklace_dim([]) == 0
    with pytest.raises(ValueError):
        necklace_dim([0, 2])


def test_basis_examples():
    assert fsq_basis(builtin_space("sphere:2"), 2, TruncationPolicy(2)) == [("sigma", "sigma")]
    assert fsq_basis(builtin_space("torus"), 0, TruncationPolicy(0, 0)) == [()]
    words = fsq_basis(builtin_space("torus"), 1, TruncationPolicy(1, 2))
    assert len(words) == 2 + 2 * 3 * 2
    for w in words:
        assert sum(s in ("t1", "t2") for s in w) == 1 and len(w) <= 2


def test_bead_boundaries():
    assert bead_boundary("sigma", builtin_space("sphere:2")) == Combination()
    assert bead_boundary("t1", builtin_space("torus")) == Combination({("a", "b"): 1, ("c",): -1})
    assert bead_boundary("sigma", builtin_space("rp2")) == Combination({("a", "a"): 1, (): -1})
    assert bead_boundary("a", builtin_space("torus")) == Combination()


def test_sign_moves_past_beads():
    K = builtin_space("torus")
    got = fsq_differential(("t1", "t2"), K)
    want = Combination({("a", "b", "t2"): 1, ("c", "t2"): -1,
                        ("t1", "b", "a"): -1, ("t1", "c"): 1})
    assert got == want
    # edges have cube dimension 0 and do not shift the sign
    assert fsq_differential(("a", "t2"), K) == Combination({("a", "b", "a"): 1, ("a", "c"): -1})


def test_product():
    assert fsq_product(("a",), ("b",)) == ("a", "b")
    assert fsq_product((), ("t1",)) == ("t1",)
    assert fsq_product(fsq_product(("t1",), ("a",)), ("b",)) == \
        fsq_product(("t1",), fsq_product(("a",), ("b",)))


def test_phi_examples():
    K = builtin_space("torus")
    assert phi((), K) == Combination.of(())
    assert phi(("a",), K) == Combination({(): 1, ("a",): -1})
    assert phi(("a", "b"), K) == Combination({("a", "b"): 1, ("a",): -1, ("b",): -1, (): 1})
    assert phi(("t1",), K) == Combination({("t1",): 1})
    S3 = builtin_space("sphere:3")
    assert phi(("sigma",), S3) == Combination({("sigma",): -1})


def test_rp2_chain_map_by_hand():
    K = builtin_space("rp2")
    lhs = Combination()
    for w, c in fsq_differential(("sigma",), K).items():
        lhs.add_scaled(phi(w, K), c)
    assert lhs == Combination({("a", "a"): 1, ("a",): -2})
    assert lhs == apply_differential(phi(("sigma",), K), K)


def test_edge_image_with_minus_one_is_not_a_chain_map():
    # φ(e) = [e] - 1 sends a deleted degenerate edge and a real edge to
    # different constants, which breaks the chain-map identity on the torus.
    K = builtin_space("torus")

    def literal(w):
        out = Combination.of(())
        for s in w:
            img = Combination({(s,): 1, (): -1}) if K.dim(s) == 1 else Combination.of((s,))
            out = multiply(out, img)
        return out

    for sign in (1, -1):
        lhs = Combination()
        for w, c in fsq_differential(("t1",), K).items():
            lhs.add_scaled(literal(w), c)
        rhs = apply_differential(Combination({("t1",): sign}), K)
        assert lhs != rhs


@pytest.mark.parametrize("name,policy", [
    ("sphere:2", TruncationPolicy(6)),
    ("sphere:3", TruncationPolicy(6)),
    ("rp2", TruncationPolicy(4, 6)),
    ("torus", TruncationPolicy(3, 4)),
    ("wedge-circles:2", TruncationPolicy(2, 4)),
    ("collapsed-simplex:4", TruncationPolicy(4, 3)),
])
def test_verify_phi(name, policy):
    rep = verify_phi(builtin_space(name), policy, pairs=100, seed=3)
    assert rep.ok, rep.failures
    assert rep.pairs_checked == 100
    assert rep.to_dict()["ok"] is True


def test_phi_diagonal_sign_is_total_bead_dimension():
    K = builtin_space("collapsed-simplex:3")
    for n in range(4):
        for w in fsq_basis(K, n, TruncationPolicy(3, 3)):
            assert phi(w, K)[w] == (-1) ** (n + len(w))


@pytest.mark.parametrize("name,policy", [
    ("torus", TruncationPolicy(4, 4)),
    ("rp2", TruncationPolicy(4, 4)),
    ("sphere:2", TruncationPolicy(4, 4)),
    ("collapsed-simplex:4", TruncationPolicy(3, 2)),
])
def test_square_zero_exact(name, policy):
    assert square_zero_check(builtin_space(name), policy) == []
    assert square_zero_check(builtin_space(name), policy, "cobar") == []


def test_truncation_modes():
    torus, rp2 = builtin_space("torus"), builtin_space("rp2")
    assert resolve_truncation(torus, TruncationPolicy(2, 3)) == "length"
    assert resolve_truncation(rp2, TruncationPolicy(2, 3)) == "phi"
    assert resolve_truncation(builtin_space("sphere:3"), TruncationPolicy(2)) == "exact"
    with pytest.raises(ValueError):
        resolve_truncation(rp2, TruncationPolicy(2, 3), "length")
    with pytest.raises(ValueError):
        resolve_truncation(rp2, TruncationPolicy(2, 3), "bogus")


@pytest.mark.parametrize("name,policy,mode", [
    ("rp2", TruncationPolicy(5, 5), "phi"),
    ("torus", TruncationPolicy(3, 4), "phi"),
    ("torus", TruncationPolicy(3, 4), "length"),
    ("sphere:2", TruncationPolicy(5, 3), "phi"),
])
def test_fsq_homology_matches_cobar(name, policy, mode):
    K = builtin_space(name)
    C = fsq_complex(K, policy, mode)
    assert verify_complex(C).ok
    degrees = range(policy.max_degree)
    assert homology(C, degrees).to_dicts() == homology(cobar_complex(K, policy), degrees).to_dicts()


def test_naturality_under_wedge_inclusion():
    # wedge-circles:1 -> wedge-circles:2 sends a to a
    K1, K2 = builtin_space("wedge-circles:1"), builtin_space("wedge-circles:2")
    for w in fsq_basis(K1, 0, TruncationPolicy(0, 4)):
        assert phi(w, K1) == phi(w, K2)


def test_algebra_map_on_random_pairs():
    K = builtin_space("collapsed-simplex:3")
    words = [w for n in range(3) for w in fsq_basis(K, n, TruncationPolicy(2, 2))]
    rng = random.Random(11)
    for _ in range(50):
        a, b = rng.choice(words), rng.choice(words)
        assert phi(a + b, K) == multiply(phi(a, K), phi(b, K))
