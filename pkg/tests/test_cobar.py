import pytest
from hypothesis import given, settings, strategies as st

from cobarkit.chain_algebra import Combination, homology, verify_complex
from cobarkit.cobar import (TruncationPolicy, cobar_basis, cobar_complex, cobar_differential,
                            cobar_product, h0_ring_presentation, multiply, word_bases,
                            word_degree)
from cobarkit.simplicial import builtin_space, collapsed_simplex
from oracles import all_words


def test_basis_examples():
    assert cobar_basis(builtin_space("sphere:2"), 3, TruncationPolicy(3)) == [("sigma",) * 3]
    for name in ("torus", "sphere:3", "wedge-circles:2"):
        assert cobar_basis(builtin_space(name), 0, TruncationPolicy(0, 0)) == [()]
    got = cobar_basis(builtin_space("wedge-circles:2"), 0, TruncationPolicy(0, 2))
    assert got == [(), ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]


def test_basis_needs_length_bound_with_edges():
    with pytest.raises(ValueError):
        word_bases(builtin_space("torus"), TruncationPolicy(2))
    with pytest.raises(ValueError):
        cobar_basis(builtin_space("sphere:2"), 3, TruncationPolicy(2))


def test_unbounded_length_without_edges():
    bases = word_bases(builtin_space("sphere:3"), TruncationPolicy(6))
    assert {n: len(b) for n, b in bases.items()} == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1, 5: 0, 6: 1}


def test_differential_examples():
    assert cobar_differential(("sigma",), builtin_space("sphere:2")) == Combination()
    D = cobar_differential(("t1",), builtin_space("torus"))
    assert D == Combination({("b",): -1, ("c",): 1, ("a",): -1, ("a", "b"): 1})
    D = cobar_differential(("sigma",), builtin_space("rp2"))
    assert D == Combination({("a",): -2, ("a", "a"): 1})
    assert cobar_differential(("a", "b"), builtin_space("wedge-circles:2")) == Combination()


def test_product():
    assert cobar_product(("a",), ("b",)) == ("a", "b")
    assert cobar_product((), ("a",)) == ("a",)
    x = Combination({("a",): 2, (): 1})
    y = Combination({("b",): -1})
    assert multiply(multiply(x, y), x) == multiply(x, multiply(y, x))


def _words(K, max_len):
    letters = K.positive_simplices()
    return st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)


def _D(x, K):
    out = Combination()
    for m, c in x.items():
        out.add_scaled(cobar_differential(m, K), c)
    return out


@pytest.mark.parametrize("name", ["torus", "rp2", "collapsed-simplex:4"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_leibniz(name, data):
    K = builtin_space(name)
    m1 = data.draw(_words(K, 3))
    m2 = data.draw(_words(K, 3))
    lhs = cobar_differential(m1 + m2, K)
    rhs = multiply(cobar_differential(m1, K), Combination.of(m2))
    rhs.add_scaled(multiply(Combination.of(m1), cobar_differential(m2, K)),
                   (-1) ** word_degree(m1, K))
    assert lhs == rhs


@pytest.mark.parametrize("name", ["torus", "rp2", "collapsed-simplex:4", "sphere:3"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_square_zero_and_grading(name, data):
    K = builtin_space(name)
    m = data.draw(_words(K, 4))
    Dm = cobar_differential(m, K)
    for t in Dm:
        assert word_degree(t, K) == word_degree(m, K) - 1
        assert len(t) in (len(m), len(m) + 1)
    assert _D(Dm, K) == Combination()


@pytest.mark.parametrize("name,policy", [
    ("torus", TruncationPolicy(2, 4)),
    ("rp2", TruncationPolicy(4, 4)),
    ("sphere:2", TruncationPolicy(6)),
    ("collapsed-simplex:3", TruncationPolicy(3, 3)),
])
def test_truncated_complex_is_a_complex(name, policy):
    C = cobar_complex(builtin_space(name), policy)
    assert verify_complex(C).ok
    assert C.truncation["model"] == "cobar"


def test_sphere_loop_homology():
    H2 = homology(cobar_complex(builtin_space("sphere:2"), TruncationPolicy(7)), range(7))
    assert H2.ranks() == [1] * 7
    H3 = homology(cobar_complex(builtin_space("sphere:3"), TruncationPolicy(7)), range(7))
    assert H3.ranks() == [1, 0, 1, 0, 1, 0, 1]
    assert all(not g.torsion for g in H2.groups + H3.groups)


def test_wedge_degree_zero_is_free_monoid_ring():
    H = homology(cobar_complex(builtin_space("wedge-circles:2"), TruncationPolicy(3, 4)), range(3))
    assert H.ranks() == [31, 0, 0]


def test_identity_map_acts_trivially_on_bases():
    K = builtin_space("torus")
    bases = word_bases(K, TruncationPolicy(2, 3))
    relabelled = {n: [tuple(s for s in w) for w in b] for n, b in bases.items()}
    assert relabelled == bases


def test_pi0_presentations():
    rp2 = h0_ring_presentation(builtin_space("rp2"))
    assert rp2.monoid_strings() == ["Â_a² = 1"]
    assert rp2.relations[0].raw_string() == "-2A_a + A_a² = 0"
    torus = h0_ring_presentation(builtin_space("torus"))
    assert torus.monoid_strings() == ["Â_c = Â_aÂ_b", "Â_c = Â_bÂ_a"]
    wedge = h0_ring_presentation(builtin_space("wedge-circles:2"))
    assert wedge.is_free and wedge.generators == ["a", "b"]
    assert "free on Â_a, Â_b" in wedge.text()
    s2 = h0_ring_presentation(builtin_space("sphere:2"))
    assert s2.is_free and s2.generators == []


def test_pi0_collapsed_simplex():
    pres = h0_ring_presentation(collapsed_simplex(2))
    assert pres.monoid_strings() == ["Â_v02 = Â_v01Â_v12"]


@pytest.mark.parametrize("name,policy", [
    ("torus", TruncationPolicy(3, 3)),
    ("rp2", TruncationPolicy(4, 4)),
    ("collapsed-simplex:3", TruncationPolicy(3, 3)),
])
def test_basis_matches_brute_force(name, policy):
    K = builtin_space(name)
    bases = word_bases(K, policy)
    order = K.order
    for n, words in bases.items():
        brute = [w for w in all_words(K.positive_simplices(), policy.max_length)
                 if word_degree(w, K) == n]
        brute.sort(key=lambda w: (len(w), [order[s] for s in w]))
        assert words == brute
