"""
A truncated chain model of the mapping space C(K)(*, *) of the rigidification.

Generators are pairs ``[f, τ]``: a necklace word f and a nondegenerate
simplex τ of its cube (Δ¹)^{cube_dim f}.  Coordinates of the cube are the
inner vertices of the beads, bead by bead; a vertex of the cube is the set
of inner vertices a path passes through.

Two kinds of moves generate the colimit identifications:

* face inclusions: if every vertex of τ has coordinate p equal to 1 the
  bead is split at that vertex, if equal to 0 the bead is replaced by the
  inner face missing it, and coordinate p is removed;
* degenerate beads: a bead s_i ρ is replaced by ρ and the cube is pushed
  along the induced map (drop a coordinate when i is 0 or n-1, merge two
  adjacent coordinates by max otherwise; a degenerate edge simply
  disappears).  A simplex whose image has a repeated vertex is zero.

Every generator has a unique normal form, a word of nondegenerate beads
with a simplex running from 0...0 to 1...1 (an *interior* simplex, i.e. an
ordered partition of the coordinates), or zero.  :func:`identification_closure`
rebuilds the classes by union-find over all single moves and checks that
each class has a single normal form.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from scipy.cluster.hierarchy import DisjointSet

from .chain_algebra import Combination, IntegerComplex, homology
from .chains import CubeSimplex, cube_power, ez_shuffle
from .cobar import TruncationPolicy, Word, word_bases
from .necklace import fsq_complex, fsq_differential, fsq_product, length_truncation_closes
from .simplicial import (ReducedSimplicialSet, SimplexRef, apply_face,
                         front_back_restrictions)


class TruncationError(RuntimeError):
    """The requested window does not give a well-defined finite complex."""


Cell = tuple  # (word, CubeSimplex)


def enumerate_necklace_maps(K: ReducedSimplicialSet, max_cube_dim: int,
                            policy: TruncationPolicy) -> list[Word]:
    """Totally nondegenerate necklace words with cube_dim <= max_cube_dim, length <= L."""
    bases = word_bases(K, TruncationPolicy(max_cube_dim, policy.max_length))
    return [w for n in sorted(bases) for w in bases[n]]


def _raw(word: Word, K: ReducedSimplicialSet) -> tuple[SimplexRef, ...]:
    return tuple(K.ref(s) for s in word)


def _offsets(raw) -> list[int]:
    out, o = [], 0
    for r in raw:
        out.append(o)
        o += r.dim - 1
    return out


def _locate(raw, p: int) -> tuple[int, int]:
    """Bead index and inner vertex owning cube coordinate p."""
    for b, o in enumerate(_offsets(raw)):
        if o <= p < o + raw[b].dim - 1:
            return b, p - o + 1
    raise IndexError(p)


def _map_vertices(tau: CubeSimplex, fn, n: int) -> CubeSimplex | None:
    verts = tuple(fn(v) for v in tau.vertices)
    if any(a == b for a, b in zip(verts, verts[1:])):
        return None
    return CubeSimplex(n, verts)


def degeneracy_moves(raw, tau: CubeSimplex):
    """Yield (raw', tau') for collapsing each degenerate bead once (tau' None means zero)."""
    for b, (r, o) in enumerate(zip(raw, _offsets(raw))):
        if not r.is_degenerate():
            continue
        n, i = r.dim, r.degeneracies[0]
        rest = SimplexRef(r.degeneracies[1:], r.base, n - 1)
        if n == 1:
            yield raw[:b] + raw[b + 1:], tau
            continue
        if i == 0:
            fn = lambda v, o=o: v[:o] + v[o + 1:]
        elif i == n - 1:
            fn = lambda v, q=o + n - 2: v[:q] + v[q + 1:]
        else:
            fn = lambda v, q=o + i - 1: v[:q] + (max(v[q], v[q + 1]),) + v[q + 2:]
        yield raw[:b] + (rest,) + raw[b + 1:], _map_vertices(tau, fn, tau.n - 1)


def face_moves(raw, tau: CubeSimplex, K: ReducedSimplicialSet):
    """Yield (raw', tau') for each coordinate constant along tau."""
    first, last = tau.vertices[0], tau.vertices[-1]
    for p in range(tau.n):
        if first[p] != last[p]:
            continue
        b, j = _locate(raw, p)
        r = raw[b]
        if first[p] == 1:
            new = front_back_restrictions(r, j, K)
        else:
            new = (apply_face(j, r, K),)
        drop = lambda v, p=p: v[:p] + v[p + 1:]
        yield raw[:b] + tuple(new) + raw[b + 1:], _map_vertices(tau, drop, tau.n - 1)


def canonical_cell(raw, tau: CubeSimplex, K: ReducedSimplicialSet) -> Cell | None:
    """Normal form (word, interior simplex) of the generator [raw, tau], or None for zero."""
    cache = K._cache.setdefault("rigid_canonical", {})
    key = (raw, tau)
    if key in cache:
        return cache[key]
    result = None
    if tau is not None and not tau.is_degenerate():
        step = next(degeneracy_moves(raw, tau), None)
        if step is None:
            step = next(face_moves(raw, tau, K), None)
        if step is None:
            result = (tuple(r.base for r in raw), tau)
        elif step[1] is not None:
            result = canonical_cell(step[0], step[1], K)
    cache[key] = result
    return result


def canonical(word: Word, tau: CubeSimplex, K: ReducedSimplicialSet) -> Cell | None:
    return canonical_cell(_raw(word, K), tau, K)


def interior_simplices(m: int, degree: int) -> list[CubeSimplex]:
    """Simplices of (Δ¹)^m from 0...0 to 1...1 with ``degree`` steps, sorted."""
    out = set()
    if m == 0:
        return [CubeSimplex(0, ((),))] if degree == 0 else []
    if degree < 1 or degree > m:
        return []
    for perm in permutations(range(m)):
        # cut the flip order into `degree` nonempty blocks
        for cuts in _compositions(m, degree):
            v = [0] * m
            verts = [tuple(v)]
            k = 0
            for size in cuts:
                for c in perm[k:k + size]:
                    v[c] = 1
                k += size
                verts.append(tuple(v))
            out.add(tuple(verts))
    return [CubeSimplex(m, vs) for vs in sorted(out)]


def _compositions(m: int, parts: int):
    if parts == 1:
        yield (m,)
        return
    for first in range(1, m - parts + 2):
        for rest in _compositions(m - first, parts - 1):
            yield (first,) + rest


def cell_boundary(cell: Cell, K: ReducedSimplicialSet) -> Combination:
    """Exact boundary of an interior cell, as a combination of normal forms."""
    word, tau = cell
    raw = _raw(word, K)
    out = Combination()
    if tau.dim == 0:
        return out
    for i in range(tau.dim + 1):
        c = canonical_cell(raw, tau.face(i), K)
        if c is not None:
            out.add_term(c, (-1) ** i)
    return out


def transport(word: Word, chain: Combination, K: ReducedSimplicialSet) -> Combination:
    """Normal forms of Σ c [word, τ]."""
    raw = _raw(word, K)
    out = Combination()
    for tau, c in chain.items():
        cell = canonical_cell(raw, tau, K)
        if cell is not None:
            out.add_term(cell, c)
    return out


@dataclass
class RigidModel:
    """The finite complex together with its truncation bookkeeping."""

    complex: IntegerComplex
    frontier: list[Cell] = field(default_factory=list)


def _word_len(cell: Cell) -> int:
    return len(cell[0])


def rigid_model(K: ReducedSimplicialSet, max_degree: int, policy: TruncationPolicy) -> RigidModel:
    """Interior cells of simplex degree <= max_degree in words with
    cube_dim <= policy.max_degree and length <= L.

    Boundary terms landing on words longer than L are dropped and recorded
    as frontier; that is a quotient complex only when no face can shorten a
    word, otherwise :class:`TruncationError` is raised.
    """
    words = enumerate_necklace_maps(K, policy.max_degree, policy)
    dims = K.dims
    bases: dict[int, list[Cell]] = {d: [] for d in range(max_degree + 1)}
    for w in words:
        m = sum(dims[s] - 1 for s in w)
        for d in range(min(m, max_degree) + 1):
            bases[d].extend((w, t) for t in interior_simplices(m, d))
    L = policy.max_length
    frontier: set = set()

    def differential(cell):
        out = Combination()
        for c, v in cell_boundary(cell, K).items():
            if L is not None and _word_len(c) > L:
                frontier.add(c)
            else:
                out.add_term(c, v)
        return out

    C = IntegerComplex.from_differential(
        bases, differential,
        truncation={"model": "rigid", "space": K.name, "max_cube_dim": policy.max_degree,
                    "max_length": "unbounded" if L is None else L,
                    "max_simplex_degree": max_degree})
    if frontier and not length_truncation_closes(K):
        raise TruncationError(
            f"{K.name}: faces both lengthen and shorten necklaces, so no length cap "
            f"gives a closed window ({len(frontier)} cells beyond length {L})")
    C.truncation["frontier_cells"] = len(frontier)
    return RigidModel(C, sorted(frontier, key=_cell_key))


def _cell_key(cell: Cell):
    return (len(cell[0]), cell[0], cell[1].vertices)


def rigid_chain_complex(K: ReducedSimplicialSet, max_degree: int, policy: TruncationPolicy) -> IntegerComplex:
    return rigid_model(K, max_degree, policy).complex


def psi(w: Word, K: ReducedSimplicialSet) -> Combination:
    """ψ(w) = [w, e×...×e] in normal forms."""
    m = sum(K.dims[s] - 1 for s in w)
    return transport(w, cube_power(m), K)


def psi_combination(x: Combination, K: ReducedSimplicialSet) -> Combination:
    out = Combination()
    for w, c in x.items():
        out.add_scaled(psi(w, K), c)
    return out


def rigid_product(x: Combination, y: Combination, K: ReducedSimplicialSet,
                  order: str = "direct") -> Combination:
    """Product of cell combinations.

    ``direct`` multiplies [f, σ]·[g, τ] = [f ∨ g, σ × τ]; ``reversed`` is
    [g ∨ f, τ × σ], the order written for composition in C(K).
    """
    out = Combination()
    for (f, s), a in x.items():
        for (g, t), b in y.items():
            if order == "reversed":
                f2, s2, g2, t2 = g, t, f, s
            else:
                f2, s2, g2, t2 = f, s, g, t
            out.add_scaled(transport(f2 + g2, ez_shuffle(s2, t2), K), a * b)
    return out


def rigid_boundary(x: Combination, K: ReducedSimplicialSet) -> Combination:
    out = Combination()
    for cell, c in x.items():
        out.add_scaled(cell_boundary(cell, K), c)
    return out


# ---------------------------------------------------------------------------
# union-find cross-check
# ---------------------------------------------------------------------------

ZERO = ("zero",)


@dataclass
class ClosureReport:
    generators: int = 0
    classes: int = 0
    zero_class_size: int = 0
    conflicts: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.conflicts

    def to_dict(self) -> dict:
        return {"generators": self.generators, "classes": self.classes,
                "zero_class_size": self.zero_class_size, "ok": self.ok,
                "conflicts": self.conflicts[:10]}


def identification_closure(K: ReducedSimplicialSet, max_degree: int,
                           policy: TruncationPolicy) -> ClosureReport:
    """Union-find over every single identification move from every generator.

    Generators are all nondegenerate cube simplices of degree <= max_degree
    on the words of the window, together with everything reachable from
    them by moves.  Each class must contain exactly one normal form.
    """
    from .chains import nondegenerate_cube_simplices

    dsu = DisjointSet([ZERO])
    todo = []
    for w in enumerate_necklace_maps(K, policy.max_degree, policy):
        m = sum(K.dims[s] - 1 for s in w)
        for simplices in nondegenerate_cube_simplices(m, max_degree).values():
            for t in simplices:
                todo.append((_raw(w, K), t))
    seen = set()
    while todo:
        node = todo.pop()
        if node in seen:
            continue
        seen.add(node)
        dsu.add(node)
        raw, tau = node
        moves = list(degeneracy_moves(raw, tau)) + list(face_moves(raw, tau, K))
        for raw2, tau2 in moves:
            if tau2 is None:
                dsu.merge(node, ZERO)
            else:
                nxt = (raw2, tau2)
                dsu.add(nxt)
                dsu.merge(node, nxt)
                todo.append(nxt)
    report = ClosureReport(generators=len(seen))
    for cls in dsu.subsets():
        report.classes += 1
        forms = set()
        for node in cls:
            if node == ZERO:
                forms.add(None)
            else:
                forms.add(canonical_cell(node[0], node[1], K))
        if ZERO in cls:
            report.zero_class_size = len(cls) - 1
        if len(forms) != 1:
            shown = sorted(str(f if f is None else (f[0], str(f[1]))) for f in forms)
            report.conflicts.append(f"class of {len(cls)} generators has normal forms {shown[:3]}")
    return report


# ---------------------------------------------------------------------------
# verification of ψ
# ---------------------------------------------------------------------------

@dataclass
class PsiReport:
    space: str
    max_degree: int
    policy: TruncationPolicy
    words_checked: int = 0
    pairs_checked: int = 0
    chain_map: bool = True
    product_direct: bool = True
    product_reversed: bool = True
    homology_agrees: bool | None = None
    rigid_ranks: list = field(default_factory=list)
    fsq_ranks: list = field(default_factory=list)
    closure: ClosureReport | None = None
    skipped: str | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def product_relation(self) -> str:
        if self.product_direct and self.product_reversed:
            return "both"
        if self.product_direct:
            return "direct"
        if self.product_reversed:
            return "reversed"
        return "neither"

    @property
    def ok(self) -> bool:
        closure_ok = self.closure is None or self.closure.ok
        return (self.skipped is None and self.chain_map and bool(self.homology_agrees)
                and self.product_relation != "neither" and closure_ok)

    def to_dict(self) -> dict:
        return {
            "check": "psi-comparison", "space": self.space, "max_degree": self.max_degree,
            "policy": self.policy.to_dict(), "ok": self.ok, "skipped": self.skipped,
            "chain_map": self.chain_map, "product_relation": self.product_relation,
            "homology_agrees": self.homology_agrees,
            "rigid_homology": self.rigid_ranks, "fsq_homology": self.fsq_ranks,
            "identification_closure": None if self.closure is None else self.closure.to_dict(),
            "words_checked": self.words_checked, "pairs_checked": self.pairs_checked,
            "failures": self.failures[:10],
        }


def _group_strings(result) -> list:
    return [g.to_dict() for g in result.groups]


def verify_psi(K: ReducedSimplicialSet, max_degree: int, policy: TruncationPolicy,
               pairs: int = 20, seed: int = 0, closure: bool = True) -> PsiReport:
    """Chain map, product order and homology comparison for ψ in degrees <= max_degree.

    Words up to cube dimension max_degree + 1 enter both models so that
    the compared degrees have all their boundaries.
    """
    window = TruncationPolicy(max_degree + 1, policy.max_length)
    report = PsiReport(K.name, max_degree, window)
    try:
        model = rigid_model(K, max_degree + 1, window)
    except TruncationError as exc:
        report.skipped = str(exc)
        return report

    words = enumerate_necklace_maps(K, max_degree + 1, window)
    for w in words:
        report.words_checked += 1
        lhs = rigid_boundary(psi(w, K), K)
        rhs = psi_combination(fsq_differential(w, K), K)
        if lhs != rhs:
            report.chain_map = False
            report.failures.append(f"∂ψ{w} != ψ∂{w}")

    rng = random.Random(seed)
    for _ in range(pairs if words else 0):
        a, b = rng.choice(words), rng.choice(words)
        report.pairs_checked += 1
        target = psi(fsq_product(a, b), K)
        if rigid_product(psi(a, K), psi(b, K), K, "direct") != target:
            report.product_direct = False
        if rigid_product(psi(a, K), psi(b, K), K, "reversed") != target:
            report.product_reversed = False

    degrees = range(max_degree + 1)
    rigid_h = homology(model.complex, degrees)
    fsq_h = homology(fsq_complex(K, window), degrees)
    report.rigid_ranks = _group_strings(rigid_h)
    report.fsq_ranks = _group_strings(fsq_h)
    report.homology_agrees = report.rigid_ranks == report.fsq_ranks
    if not report.homology_agrees:
        report.failures.append("rigid and necklace homology differ")
    if closure:
        report.closure = identification_closure(K, max_degree + 1, window)
        report.failures.extend(report.closure.conflicts[:5])
    return report
