"""
Exact integer chain complexes and their homology.

Matrices are stored column-sparse with Python integers, so nothing here
can overflow.  Homology goes through a sparse elimination that only uses
unit pivots (these never change the invariant factors), followed by a
dense Smith normal form of whatever is left over.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class Combination(dict):
    """A finite formal Z-linear combination ``{basis element: coefficient}``.

    Zero coefficients are never stored.
    """

    __slots__ = ()

    @classmethod
    def of(cls, key, coeff: int = 1) -> "Combination":
        c = cls()
        if coeff:
            c[key] = coeff
        return c

    def add_term(self, key, coeff: int) -> None:
        if not coeff:
            return
        v = self.get(key, 0) + coeff
        if v:
            self[key] = v
        else:
            del self[key]

    def add_scaled(self, other, factor: int = 1) -> "Combination":
        if factor:
            for k, v in other.items():
                self.add_term(k, v * factor)
        return self

    def __add__(self, other):
        return Combination(self).add_scaled(other)

    def __sub__(self, other):
        return Combination(self).add_scaled(other, -1)

    def __neg__(self):
        return Combination({k: -v for k, v in self.items()})

    def __mul__(self, factor: int):
        if not isinstance(factor, int):
            return NotImplemented
        return Combination({k: v * factor for k, v in self.items()}) if factor else Combination()

    __rmul__ = __mul__

    def map_keys(self, fn) -> "Combination":
        out = Combination()
        for k, v in self.items():
            out.add_term(fn(k), v)
        return out

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"{v}*{k!r}" for k, v in self.items())


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass
class SparseMatrix:
    """Column-sparse integer matrix: ``cols[j] = {row: value}``."""

    nrows: int
    ncols: int
    cols: list[dict[int, int]]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, [{} for _ in range(ncols)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        rows = [list(map(int, r)) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{i: rows[i][j] for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def max_abs(self) -> int:
        return max((abs(v) for c in self.cols for v in c.values()), default=0)

    def max_col_l1(self) -> int:
        return max((sum(abs(v) for v in c.values()) for c in self.cols), default=0)

    def to_scipy(self) -> sp.csc_matrix:
        data, indices, indptr = [], [], [0]
        for col in self.cols:
            for i in sorted(col):
                indices.append(i)
                data.append(col[i])
            indptr.append(len(indices))
        return sp.csc_matrix((np.array(data, dtype=np.int64), np.array(indices, dtype=np.int64),
                              np.array(indptr, dtype=np.int64)), shape=(self.nrows, self.ncols))

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseMatrix":
        """Rows/columns relabelled: old row i becomes row_perm[i], likewise for columns."""
        cols: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for j, col in enumerate(self.cols):
            cols[col_perm[j]] = {row_perm[i]: v for i, v in col.items()}
        return SparseMatrix(self.nrows, self.ncols, cols)


def matmul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Exact product ``a @ b``.  Uses int64 arithmetic only when it cannot overflow."""
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch {a.nrows}x{a.ncols} @ {b.nrows}x{b.ncols}")
    if a.max_abs() * b.max_col_l1() < 2 ** 62:
        prod = (a.to_scipy() @ b.to_scipy()).tocsc()
        prod.eliminate_zeros()
        cols = []
        for j in range(prod.shape[1]):
            lo, hi = prod.indptr[j], prod.indptr[j + 1]
            cols.append({int(i): int(v) for i, v in zip(prod.indices[lo:hi], prod.data[lo:hi])})
        return SparseMatrix(a.nrows, b.ncols, cols)
    cols = []
    for bcol in b.cols:
        acc = Combination()
        for k, v in bcol.items():
            acc.add_scaled(a.cols[k], v)
        cols.append(dict(acc))
    return SparseMatrix(a.nrows, b.ncols, cols)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]], transforms: bool = False):
    """Invariant factors of an integer matrix.

    Returns the tuple ``(d1, d2, ...)`` of nonzero invariant factors with
    d1 | d2 | ...  With ``transforms=True`` returns ``(factors, U, V, D)``
    where U and V are unimodular and ``U @ M @ V == D`` is diagonal.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row[dst] += q * row[src]
        rs, rd = A[src], A[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if transforms:
            us, ud = U[src], U[dst]
            for k in range(m):
                ud[k] += q * us[k]

    def add_col(src, dst, q):  # col[dst] += q * col[src]
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block, ties broken by position
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(t, i, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(t, j, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived: move it to the pivot
                best = min(((abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]), default=None)
                best2 = min(((abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]), default=None)
                cand = min(c for c in (best, best2) if c is not None)
                _, i, j = cand
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if transforms:
                U[t] = [-v for v in U[t]]
        t += 1
    factors = tuple(A[k][k] for k in range(min(m, n)) if A[k][k])
    if transforms:
        return factors, U, V, A
    return factors


def minor_gcd_factors(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors from gcds of k×k minors (slow reference)."""
    from itertools import combinations

    from sympy import Matrix

    m = len(M)
    n = len(M[0]) if m else 0
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                det = int(Matrix([[M[i][j] for j in cols] for i in rows]).det())
                g = gcd(g, det)
                if g == 1 and prev == 1:
                    break
            if g == 1 and prev == 1:
                break
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return tuple(factors)


def _eliminate_units(mat: SparseMatrix) -> tuple[int, list[dict[int, int]]]:
    """Eliminate unit pivots; return (number eliminated, remaining columns).

    Each elimination is a unimodular row/column operation that splits off an
    invariant factor 1, so rank and torsion of the remainder determine those
    of the input.
    """
    cols = {j: dict(c) for j, c in enumerate(mat.cols) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    eliminated = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda j: (len(cols[j]), j)):
            col = cols.get(j)
            if not col:
                continue
            units = [i for i, v in col.items() if v == 1 or v == -1]
            if not units:
                continue
            r = min(units, key=lambda i: (len(rows[i]), i))
            p = col[r]
            for j2 in sorted(rows[r] - {j}):
                c2 = cols[j2]
                f = c2[r] * p  # p = ±1, so c2 -= (c2[r]/p) * col
                for i, v in col.items():
                    nv = c2.get(i, 0) - f * v
                    if nv:
                        if i not in c2:
                            rows[i].add(j2)
                        c2[i] = nv
                    elif i in c2:
                        del c2[i]
                        rows[i].discard(j2)
                if not c2:
                    del cols[j2]
            for i in col:
                rows[i].discard(j)
            del rows[r]
            del cols[j]
            eliminated += 1
            progress = True
    return eliminated, list(cols.values())


@dataclass(frozen=True)
class MatrixInvariants:
    rank: int
    torsion: tuple[int, ...]  # invariant factors > 1


def matrix_invariants(mat: SparseMatrix) -> MatrixInvariants:
    """Rank and nontrivial invariant factors of a sparse integer matrix."""
    if mat.nrows == 0 or mat.ncols == 0:
        return MatrixInvariants(0, ())
    ones, rest = _eliminate_units(mat)
    if not rest:
        return MatrixInvariants(ones, ())
    row_ids = sorted({i for c in rest for i in c})
    index = {r: k for k, r in enumerate(row_ids)}
    dense = [[0] * len(rest) for _ in row_ids]
    for j, c in enumerate(rest):
        for i, v in c.items():
            dense[index[i]][j] = v
    factors = smith_normal_form(dense)
    return MatrixInvariants(ones + len(factors), tuple(d for d in factors if d > 1))


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

@dataclass
class IntegerComplex:
    """Finitely generated free chain complex over Z.

    ``bases[n]`` lists the basis labels in degree n; ``boundaries[n]`` is
    the matrix of ∂_n from degree n to degree n-1.  ``truncation`` carries
    whatever bounds were used to make the complex finite.
    """

    bases: dict[int, list[Hashable]]
    boundaries: dict[int, SparseMatrix]
    truncation: dict = field(default_factory=dict)

    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def boundary(self, n: int) -> SparseMatrix:
        mat = self.boundaries.get(n)
        if mat is None:
            return SparseMatrix.zeros(self.rank(n - 1), self.rank(n))
        return mat

    @classmethod
    def from_differential(cls, bases: dict[int, list], differential, truncation=None,
                          drop_unknown: bool = False) -> "IntegerComplex":
        """Assemble boundary matrices from a function ``x -> Combination``.

        With ``drop_unknown`` terms outside the next basis are discarded
        (quotient by a subcomplex); otherwise they raise ``KeyError``.
        """
        boundaries = {}
        for n in sorted(bases):
            if n - 1 not in bases:
                continue
            index = {b: i for i, b in enumerate(bases[n - 1])}
            cols = []
            for x in bases[n]:
                col = {}
                for key, v in differential(x).items():
                    i = index.get(key)
                    if i is None:
                        if drop_unknown:
                            continue
                        raise KeyError(f"boundary of {x!r} leaves the basis: {key!r}")
                    col[i] = col.get(i, 0) + v
                cols.append({i: v for i, v in col.items() if v})
            boundaries[n] = SparseMatrix(len(bases[n - 1]), len(bases[n]), cols)
        return cls({n: list(b) for n, b in bases.items()}, boundaries, dict(truncation or {}))


@dataclass
class ComplexReport:
    ok: bool
    checked_pairs: list[int]
    failure: dict | None = None

    def to_dict(self) -> dict:
        return {"check": "boundary-squared", "ok": self.ok,
                "checked_degrees": self.checked_pairs, "failure": self.failure}


def verify_complex(C: IntegerComplex) -> ComplexReport:
    """Check matrix shapes and ∂_{n-1} ∂_n = 0 for every stored pair."""
    checked = []
    for n, mat in sorted(C.boundaries.items()):
        if (mat.nrows, mat.ncols) != (C.rank(n - 1), C.rank(n)):
            return ComplexReport(False, checked, {"degree": n, "reason": "shape mismatch"})
        if any(not 0 <= i < mat.nrows for col in mat.cols for i in col):
            return ComplexReport(False, checked, {"degree": n, "reason": "row index out of range"})
    for n in sorted(C.boundaries):
        if n - 1 not in C.boundaries:
            continue
        prod = matmul(C.boundaries[n - 1], C.boundaries[n])
        for j, col in enumerate(prod.cols):
            if col:
                i = min(col)
                return ComplexReport(False, checked, {
                    "degree": n, "row": i, "col": j, "value": col[i],
                    "source": repr(C.bases[n][j]), "target": repr(C.bases[n - 2][i])})
        checked.append(n)
    return ComplexReport(True, checked)


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"degree": self.degree, "free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


@dataclass
class HomologyResult:
    groups: list[HomologyGroup]
    truncation: dict = field(default_factory=dict)

    def __getitem__(self, degree: int) -> HomologyGroup:
        for g in self.groups:
            if g.degree == degree:
                return g
        raise KeyError(degree)

    def ranks(self) -> list[int]:
        return [g.free_rank for g in self.groups]

    def to_dicts(self) -> list[dict]:
        return [g.to_dict() for g in self.groups]

    def to_json(self) -> str:
        return json.dumps(self.to_dicts())

    def table(self) -> str:
        rows = [("degree", "free_rank", "torsion", "group")]
        for g in self.groups:
            rows.append((str(g.degree), str(g.free_rank),
                         ",".join(map(str, g.torsion)) or "-", str(g)))
        widths = [max(len(r[k]) for r in rows) for k in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        if self.truncation:
            lines.append("truncated: " + ", ".join(f"{k}={v}" for k, v in self.truncation.items()))
        return "\n".join(lines)


def homology(C: IntegerComplex, degrees: Iterable[int] | None = None) -> HomologyResult:
    """Homology of ``C`` in the given degrees (default: every stored degree).

    free rank = dim C_n - rank ∂_n - rank ∂_{n+1};
    torsion = invariant factors of ∂_{n+1} exceeding 1.
    """
    stored = C.degrees()
    degrees = stored if degrees is None else list(degrees)
    for n in degrees:
        if n not in C.bases:
            raise ValueError(f"degree {n} is outside the stored range {stored[:1]}..{stored[-1:]}")
    cache: dict[int, MatrixInvariants] = {}

    def inv(n):
        if n not in cache:
            if n in C.bases and n - 1 in C.bases:
                cache[n] = matrix_invariants(C.boundary(n))
            else:
                cache[n] = MatrixInvariants(0, ())
        return cache[n]

    groups = []
    for n in degrees:
        out, inc = inv(n), inv(n + 1)
        groups.append(HomologyGroup(n, C.rank(n) - out.rank - inc.rank, inc.torsion))
    return HomologyResult(groups, dict(C.truncation))
