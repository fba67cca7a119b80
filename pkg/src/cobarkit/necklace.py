"""
The cubical necklace model F^□(K) and its isomorphism φ to the cobar construction.

A generator is a necklace word ``(f_1, ..., f_k)`` of nondegenerate simplices
of dimension >= 1 (the beads), standing for the top cube of
(Δ¹)^{cube_dim}.  The empty word is the unit.

Sign conventions, fixed once:

* a bead σ of dimension n owns cube slots s = 0..n-2; slot s = j-1 has
  the splitting face ``σ|[0..j] ∨ σ|[j..n]`` on its 1-side and the inner
  face ``d_j σ`` on its 0-side, and the local boundary is the cubical
  formula Σ_s (-1)^s (δ¹_s - δ⁰_s);
* slots are numbered consecutively along the word, so a bead preceded by
  beads of total cube dimension m picks up (-1)^m;
* φ is the algebra map with φ(bead σ) = 1 - [s⁻¹σ] for an edge and
  (-1)^{dim σ} [s⁻¹σ] otherwise.

Degenerate beads produced by a face are normalized eagerly: a degenerate
edge is the unit and is deleted, a degenerate bead of dimension >= 2 kills
the term.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .chain_algebra import Combination, IntegerComplex
from .cobar import (TruncationPolicy, Word, apply_differential, cobar_differential,
                    multiply, word_bases, word_degree)
from .simplicial import (ReducedSimplicialSet, SimplexRef, apply_face,
                         front_back_restrictions, has_degenerate_edges)

NecklaceWord = Word

TRUNCATION_MODES = ("auto", "length", "phi")


def necklace_dim(dims) -> int:
    """Cube dimension Σ n_i - k of a necklace with bead dimensions ``dims``."""
    dims = list(dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"bead dimensions must be >= 1, got {dims}")
    return sum(dims) - len(dims)


def cube_dim(w: NecklaceWord, K: ReducedSimplicialSet) -> int:
    return word_degree(w, K)


def fsq_basis(K: ReducedSimplicialSet, n: int, policy: TruncationPolicy) -> list[NecklaceWord]:
    """Necklace words of cube dimension ``n`` and length <= L in canonical order."""
    if n > policy.max_degree:
        raise ValueError(f"degree {n} exceeds the policy bound {policy.max_degree}")
    return word_bases(K, TruncationPolicy(n, policy.max_length))[n]


def fsq_product(w1: NecklaceWord, w2: NecklaceWord) -> NecklaceWord:
    """Wedge of necklaces: concatenation of bead lists."""
    return tuple(w1) + tuple(w2)


def _reduce_bead(r: SimplexRef):
    """() for the unit, None for a killed term, else the one-bead word."""
    if not r.is_degenerate():
        return (r.base,)
    return () if r.dim == 1 else None


def bead_boundary(sid: str, K: ReducedSimplicialSet) -> Combination:
    """Local boundary of the one-bead word (σ), reduced."""
    cache = K._cache.setdefault("fsq_bead", {})
    if sid in cache:
        return cache[sid]
    out = Combination()
    r = K.ref(sid)
    n = r.dim
    for j in range(1, n):
        sign = (-1) ** (j - 1)
        front, back = front_back_restrictions(r, j, K)
        f, b = _reduce_bead(front), _reduce_bead(back)
        if f is not None and b is not None:
            out.add_term(f + b, sign)
        inner = _reduce_bead(apply_face(j, r, K))
        if inner is not None:
            out.add_term(inner, -sign)
    cache[sid] = out
    return out


def fsq_differential(w: NecklaceWord, K: ReducedSimplicialSet,
                     max_length: int | None = None) -> Combination:
    """∂^□ w; terms longer than ``max_length`` are dropped."""
    out = Combination()
    dims = K.dims
    offset = 0
    for i, s in enumerate(w):
        db = bead_boundary(s, K)
        if db:
            sign = -1 if offset % 2 else 1
            prefix, suffix = w[:i], w[i + 1:]
            for t, c in db.items():
                v = prefix + t + suffix
                if max_length is None or len(v) <= max_length:
                    out.add_term(v, sign * c)
        offset += dims[s] - 1
    return out


def apply_fsq_differential(x: Combination, K: ReducedSimplicialSet,
                           max_length: int | None = None) -> Combination:
    out = Combination()
    for w, c in x.items():
        out.add_scaled(fsq_differential(w, K, max_length), c)
    return out


# ---------------------------------------------------------------------------
# φ
# ---------------------------------------------------------------------------

def _bead_image(s: str, K: ReducedSimplicialSet) -> Combination:
    n = K.dim(s)
    if n == 1:
        return Combination({(): 1, (s,): -1})
    return Combination({(s,): (-1) ** n})


def phi(w: NecklaceWord, K: ReducedSimplicialSet) -> Combination:
    """φ(w) as a combination of cobar monomials."""
    out = Combination.of(())
    for s in w:
        out = multiply(out, _bead_image(s, K))
    return out


def phi_combination(x: Combination, K: ReducedSimplicialSet) -> Combination:
    out = Combination()
    for w, c in x.items():
        out.add_scaled(phi(w, K), c)
    return out


def _edge_positions(w: NecklaceWord, K: ReducedSimplicialSet) -> list[int]:
    dims = K.dims
    return [i for i, s in enumerate(w) if dims[s] == 1]


def _reduce_long(w: NecklaceWord, K: ReducedSimplicialSet, L: int, memo: dict) -> Combination:
    """Representative of ``w`` modulo φ⁻¹(monomials longer than L), on words of length <= L.

    φ⁻¹ of the monomial w is ± Σ_S (-1)^{|S|} w_S over subsets S of edge
    positions, w_S being w with those edges deleted; that sum vanishes in
    the quotient, which expresses w through strictly shorter words.
    """
    if len(w) <= L:
        return Combination.of(w)
    if w in memo:
        return memo[w]
    edges = _edge_positions(w, K)
    out = Combination()
    for k in range(1, len(edges) + 1):
        for S in combinations(edges, k):
            drop = set(S)
            v = tuple(s for i, s in enumerate(w) if i not in drop)
            out.add_scaled(_reduce_long(v, K, L, memo), -(-1) ** k)
    memo[w] = out
    return out


def length_truncation_closes(K: ReducedSimplicialSet) -> bool:
    """True when ∂^□ never shortens a word, so long words span a subcomplex."""
    key = "fsq_length_closes"
    if key not in K._cache:
        K._cache[key] = not has_degenerate_edges(K)
    return K._cache[key]


def resolve_truncation(K: ReducedSimplicialSet, policy: TruncationPolicy, mode: str = "auto") -> str:
    if mode not in TRUNCATION_MODES:
        raise ValueError(f"unknown truncation mode {mode!r}; expected one of {TRUNCATION_MODES}")
    if policy.max_length is None:
        return "exact"
    if mode == "auto":
        return "length" if length_truncation_closes(K) else "phi"
    if mode == "length" and not length_truncation_closes(K):
        raise ValueError(f"{K.name}: ∂^□ deletes degenerate edges, so dropping long words "
                         "is not a quotient complex; use the 'phi' truncation")
    return mode


def truncated_fsq_differential(w: NecklaceWord, K: ReducedSimplicialSet,
                               policy: TruncationPolicy, mode: str, memo: dict) -> Combination:
    L = policy.max_length
    if mode in ("exact", "length"):
        return fsq_differential(w, K, L)
    out = Combination()
    for v, c in fsq_differential(w, K).items():
        out.add_scaled(_reduce_long(v, K, L, memo), c)
    return out


def fsq_complex(K: ReducedSimplicialSet, policy: TruncationPolicy,
                truncation: str = "auto") -> IntegerComplex:
    """Degrees 0..N of F^□(K) in a finite quotient.

    ``length`` drops words longer than L (valid when no nondegenerate
    simplex has a degenerate edge); ``phi`` divides by the preimage under φ
    of the long cobar monomials, which is a subcomplex for every K.
    """
    mode = resolve_truncation(K, policy, truncation)
    memo: dict = {}
    bases = word_bases(K, policy)
    return IntegerComplex.from_differential(
        bases, lambda w: truncated_fsq_differential(w, K, policy, mode, memo),
        truncation={"model": "fsq", "space": K.name, **policy.to_dict(), "quotient": mode})


# ---------------------------------------------------------------------------
# verification of φ
# ---------------------------------------------------------------------------

@dataclass
class PhiReport:
    space: str
    policy: TruncationPolicy
    basis_sizes: dict = field(default_factory=dict)
    words_checked: int = 0
    pairs_checked: int = 0
    bijection: bool = True
    triangular: bool = True
    chain_map: bool = True
    algebra_map: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijection and self.triangular and self.chain_map and self.algebra_map

    def to_dict(self) -> dict:
        return {
            "check": "phi-isomorphism", "space": self.space, "policy": self.policy.to_dict(),
            "ok": self.ok, "bijection": self.bijection, "triangular": self.triangular,
            "chain_map": self.chain_map, "algebra_map": self.algebra_map,
            "basis_sizes": {str(k): v for k, v in sorted(self.basis_sizes.items())},
            "words_checked": self.words_checked, "pairs_checked": self.pairs_checked,
            "failures": self.failures[:10],
        }


def verify_phi(K: ReducedSimplicialSet, policy: TruncationPolicy,
               pairs: int = 100, seed: int = 0) -> PhiReport:
    """Check that φ is a degreewise unipotent-triangular chain map of algebras.

    The chain-map identity φ∂^□ = Dφ is checked exactly on untruncated
    words, so it does not depend on a truncation mode.
    """
    from .cobar import cobar_basis

    report = PhiReport(K.name, policy)
    fsq = {n: fsq_basis(K, n, policy) for n in range(policy.max_degree + 1)}
    for n in range(policy.max_degree + 1):
        cob = cobar_basis(K, n, policy)
        report.basis_sizes[n] = len(fsq[n])
        if len(cob) != len(fsq[n]) or set(cob) != set(fsq[n]):
            report.bijection = False
            report.failures.append(f"degree {n}: {len(fsq[n])} necklace words, {len(cob)} monomials")

    for n, words in fsq.items():
        for w in words:
            report.words_checked += 1
            image = phi(w, K)
            lead = image.get(w, 0)
            rest = [m for m in image if m != w]
            if abs(lead) != 1 or any(len(m) >= len(w) for m in rest) \
                    or any(word_degree(m, K) != n for m in image):
                report.triangular = False
                report.failures.append(f"φ{w} is not unipotent triangular: {dict(image)}")
            lhs = phi_combination(fsq_differential(w, K), K)
            rhs = apply_differential(image, K)
            if lhs != rhs:
                report.chain_map = False
                report.failures.append(f"φ∂{w} - Dφ{w} = {dict(lhs - rhs)}")

    rng = random.Random(seed)
    pool = [w for n in sorted(fsq) for w in fsq[n]]
    for _ in range(pairs if pool else 0):
        a, b = rng.choice(pool), rng.choice(pool)
        report.pairs_checked += 1
        if phi(fsq_product(a, b), K) != multiply(phi(a, K), phi(b, K)):
            report.algebra_map = False
            report.failures.append(f"φ({a}∨{b}) != φ{a}·φ{b}")
    return report


def square_zero_check(K: ReducedSimplicialSet, policy: TruncationPolicy,
                      differential: str = "fsq") -> list[str]:
    """Exact ∂∂ = 0 on every basis word, without any truncation."""
    d = fsq_differential if differential == "fsq" else cobar_differential
    failures = []
    for n, words in word_bases(K, policy).items():
        for w in words:
            dd = Combination()
            for v, c in d(w, K).items():
                dd.add_scaled(d(v, K), c)
            if dd:
                failures.append(f"{differential}: d²{w} = {dict(dd)}")
    return failures
