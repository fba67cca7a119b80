import pytest
from hypothesis import given, settings, strategies as st

from cobarkit.chain_algebra import (Combination, IntegerComplex, SparseMatrix, homology,
                                    matmul, matrix_invariants, minor_gcd_factors,
                                    smith_normal_form, verify_complex)
from oracles import _det, invariant_factors_by_minors

small = st.integers(min_value=-9, max_value=9)
matrices = st.integers(min_value=1, max_value=6).flatmap(
    lambda r: st.integers(min_value=1, max_value=6).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_combination_arithmetic():
    x = Combination({"a": 2, "b": -1})
    y = Combination.of("a", -2)
    assert x + y == Combination({"b": -1})
    assert x - x == Combination()
    assert -x == Combination({"a": -2, "b": 1})
    assert x * 3 == Combination({"a": 6, "b": -3})
    assert x.map_keys(lambda k: "c") == Combination({"c": 1})


def test_snf_small_example():
    assert smith_normal_form([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]) == ()
    assert smith_normal_form([[2, 0], [0, 3]]) == (1, 6)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_matches_minor_oracle(M):
    factors = smith_normal_form(M)
    assert factors == invariant_factors_by_minors(M)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@settings(max_examples=30, deadline=None)
@given(matrices)
def test_library_minor_oracle_agrees(M):
    assert minor_gcd_factors(M) == invariant_factors_by_minors(M)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_transforms(M):
    factors, U, V, D = smith_normal_form(M, transforms=True)
    prod = matmul(matmul(SparseMatrix.from_dense(U), SparseMatrix.from_dense(M)),
                  SparseMatrix.from_dense(V)).to_dense()
    assert prod == D
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_sparse_invariants_match_dense(M):
    inv = matrix_invariants(SparseMatrix.from_dense(M))
    factors = smith_normal_form(M)
    assert inv.rank == len(factors)
    assert inv.torsion == tuple(d for d in factors if d > 1)


def test_matmul_big_entries_fall_back_to_exact():
    big = 2 ** 40
    a = SparseMatrix.from_dense([[big, big], [0, 1]])
    b = SparseMatrix.from_dense([[big, 0], [1, big]])
    assert matmul(a, b).to_dense() == [[big * big + big, big * big], [1, big]]


def _circle_complex():
    # one vertex, one edge: ∂ = 0
    return IntegerComplex({0: ["v"], 1: ["e"]}, {1: SparseMatrix.zeros(1, 1)})


def _rp2_cellular():
    # cells in degrees 0,1,2 with ∂2 = 2, ∂1 = 0
    return IntegerComplex({0: ["v"], 1: ["e"], 2: ["f"]},
                          {1: SparseMatrix.zeros(1, 1), 2: SparseMatrix.from_dense([[2]])})


def test_homology_of_small_complexes():
    assert homology(_circle_complex()).ranks() == [1, 1]
    H = homology(_rp2_cellular())
    assert [str(g) for g in H.groups] == ["Z", "Z/2", "0"]
    assert H[1].torsion == (2,)
    assert "Z/2" in H.table()


def test_homology_rejects_unknown_degree():
    with pytest.raises(ValueError):
        homology(_circle_complex(), [5])


def test_from_differential_and_verify():
    bases = {0: ["p"], 1: ["x", "y"], 2: ["s"]}
    d = {"x": Combination(), "y": Combination(), "s": Combination({"x": 1, "y": -1}),
         "p": Combination()}
    C = IntegerComplex.from_differential(bases, lambda k: d[k])
    assert verify_complex(C).ok
    assert homology(C).ranks() == [1, 1, 0]
    with pytest.raises(KeyError):
        IntegerComplex.from_differential({0: ["p"], 1: ["x"]}, lambda k: Combination.of("q"))


def test_verify_complex_reports_failure():
    C = IntegerComplex({0: ["a"], 1: ["b"], 2: ["c"]},
                       {1: SparseMatrix.from_dense([[1]]), 2: SparseMatrix.from_dense([[1]])})
    rep = verify_complex(C)
    assert not rep.ok
    assert rep.failure["degree"] == 2
