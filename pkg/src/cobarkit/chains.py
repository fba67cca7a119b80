"""
Normalized chains of a reduced simplicial set and chains on cubes.

The coalgebra side (boundary, Alexander-Whitney coproduct) works on the
nondegenerate simplices of a :class:`ReducedSimplicialSet`.  The product
side (Eilenberg-Zilber shuffle map) is only needed for the simplicial
cubes (Δ¹)^n, whose simplices are chains of vertices in {0,1}^n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .chain_algebra import Combination, IntegerComplex
from .simplicial import (ReducedSimplicialSet, SimplexRef, apply_face,
                         front_back_restrictions)


def normalized_boundary(sid: str, K: ReducedSimplicialSet) -> Combination:
    """Σ (-1)^i d_i σ, keeping only nondegenerate faces."""
    n = K.dim(sid)
    if n < 1:
        raise ValueError("the vertex has no boundary")
    out = Combination()
    r = K.ref(sid)
    for i in range(n + 1):
        f = apply_face(i, r, K)
        if not f.is_degenerate():
            out.add_term(f.base, (-1) ** i)
    return out


def aw_coproduct(sid: str, K: ReducedSimplicialSet) -> list[tuple[int, SimplexRef, SimplexRef]]:
    """All n+1 Alexander-Whitney terms ``(1, σ|[0..i], σ|[i..n])``.

    Counit terms and terms with degenerate factors are kept; consumers
    working in normalized chains drop what they do not need.
    """
    r = K.ref(sid)
    return [(1, *front_back_restrictions(r, i, K)) for i in range(r.dim + 1)]


def reduced_coproduct(sid: str, K: ReducedSimplicialSet) -> list[tuple[str, str]]:
    """Middle AW terms with both factors nondegenerate of positive dimension."""
    out = []
    for _, front, back in aw_coproduct(sid, K)[1:-1]:
        if not front.is_degenerate() and not back.is_degenerate():
            out.append((front.base, back.base))
    return out


def _normalized_coproduct(sid: str, K: ReducedSimplicialSet) -> Combination:
    out = Combination()
    for c, f, b in aw_coproduct(sid, K):
        if not f.is_degenerate() and not b.is_degenerate():
            out.add_term((f.base, b.base), c)
    return out


@dataclass
class CoassociativityReport:
    name: str
    max_dim: int
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"check": "aw-coassociativity", "space": self.name, "max_dim": self.max_dim,
                "ok": self.ok, "simplices_checked": self.checked, "failures": self.failures}


def coassociativity_check(K: ReducedSimplicialSet, max_dim: int) -> CoassociativityReport:
    """Compare (Δ⊗id)Δ and (id⊗Δ)Δ on every nondegenerate simplex up to ``max_dim``."""
    report = CoassociativityReport(K.name, max_dim)
    cache: dict[str, Combination] = {}

    def delta(s):
        if s not in cache:
            cache[s] = _normalized_coproduct(s, K)
        return cache[s]

    for sid in K.all_simplices():
        if K.dim(sid) > max_dim:
            continue
        left, right = Combination(), Combination()
        for (f, b), c in delta(sid).items():
            for (ff, fb), c2 in delta(f).items():
                left.add_term((ff, fb, b), c * c2)
            for (bf, bb), c2 in delta(b).items():
                right.add_term((f, bf, bb), c * c2)
        report.checked += 1
        if left != right:
            diff = left - right
            report.failures.append(f"{sid}: (Δ⊗1)Δ - (1⊗Δ)Δ = {dict(diff)}")
    return report


# ---------------------------------------------------------------------------
# cubes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CubeSimplex:
    """An m-simplex of (Δ¹)^n: m+1 componentwise weakly increasing 0/1 vectors."""

    n: int
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vs = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        for v in vs:
            if len(v) != self.n or any(x not in (0, 1) for x in v):
                raise ValueError(f"{v} is not a vertex of the {self.n}-cube")
        for v, w in zip(vs, vs[1:]):
            if any(a > b for a, b in zip(v, w)):
                raise ValueError(f"vertices {v} -> {w} are not increasing")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def is_degenerate(self) -> bool:
        return any(v == w for v, w in zip(self.vertices, self.vertices[1:]))

    def face(self, i: int) -> "CubeSimplex":
        return CubeSimplex(self.n, self.vertices[:i] + self.vertices[i + 1:])

    def boundary(self) -> Combination:
        out = Combination()
        if self.dim == 0:
            return out
        for i in range(self.dim + 1):
            f = self.face(i)
            if not f.is_degenerate():
                out.add_term(f, (-1) ** i)
        return out

    def __str__(self):
        return "<" + ",".join("".join(map(str, v)) for v in self.vertices) + ">"


def point() -> CubeSimplex:
    """The unique 0-simplex of the 0-cube."""
    return CubeSimplex(0, ((),))


def interval_edge() -> CubeSimplex:
    """The nondegenerate edge e of Δ¹."""
    return CubeSimplex(1, ((0,), (1,)))


def shuffles(p: int, q: int):
    """Yield (sign, mu) for every (p,q)-shuffle; mu = positions where the first factor moves."""
    for mu in combinations(range(p + q), p):
        sign = (-1) ** sum(m - k for k, m in enumerate(mu))
        yield sign, mu


def _shuffle_simplices(a: CubeSimplex, b: CubeSimplex) -> Combination:
    out = Combination()
    p, q = a.dim, b.dim
    for sign, mu in shuffles(p, q):
        moves = set(mu)
        i = j = 0
        verts = [a.vertices[0] + b.vertices[0]]
        for step in range(p + q):
            if step in moves:
                i += 1
            else:
                j += 1
            verts.append(a.vertices[i] + b.vertices[j])
        s = CubeSimplex(a.n + b.n, tuple(verts))
        if not s.is_degenerate():
            out.add_term(s, sign)
    return out


def ez_shuffle(a, b) -> Combination:
    """Eilenberg-Zilber shuffle product of two cube chains.

    Arguments are :class:`CubeSimplex` values or combinations of them; the
    result lives on the product cube with the coordinates of ``a`` first.
    """
    if isinstance(a, CubeSimplex):
        a = Combination.of(a)
    if isinstance(b, CubeSimplex):
        b = Combination.of(b)
    out = Combination()
    for x, cx in a.items():
        for y, cy in b.items():
            if x.is_degenerate() or y.is_degenerate():
                continue
            out.add_scaled(_shuffle_simplices(x, y), cx * cy)
    return out


def chain_boundary(c: Combination) -> Combination:
    out = Combination()
    for s, v in c.items():
        out.add_scaled(s.boundary(), v)
    return out


def cube_power(n: int) -> Combination:
    """e × e × ... × e (n factors) on (Δ¹)^n; the point for n = 0."""
    out = Combination.of(point())
    e = Combination.of(interval_edge())
    for _ in range(n):
        out = ez_shuffle(out, e)
    return out


def _bits(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> k) & 1 for k in range(n))


def nondegenerate_cube_simplices(n: int, max_degree: int | None = None) -> dict[int, list[CubeSimplex]]:
    """Strictly increasing vertex chains of {0,1}^n, grouped by simplex degree."""
    top = n if max_degree is None else min(n, max_degree)
    out: dict[int, list[CubeSimplex]] = {m: [] for m in range(top + 1)}

    def extend(chain):
        m = len(chain) - 1
        out[m].append(CubeSimplex(n, tuple(_bits(v, n) for v in chain)))
        if m == top:
            return
        last = chain[-1]
        for w in range(1 << n):
            if w != last and last & ~w == 0:
                extend(chain + [w])

    for v in range(1 << n):
        extend([v])
    for m in out:
        out[m].sort()
    return out


def cube_simplicial_chains(n: int, max_degree: int | None = None) -> IntegerComplex:
    """Normalized simplicial chain complex of (Δ¹)^n."""
    bases = nondegenerate_cube_simplices(n, max_degree)
    return IntegerComplex.from_differential(
        bases, lambda s: s.boundary(),
        truncation={"cube_dim": n, "max_degree": max(bases)})
