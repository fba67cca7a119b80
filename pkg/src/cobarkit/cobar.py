"""
The cobar construction Ω(C_*(K), ∂, Δ) on normalized chains.

A monomial ``[s⁻¹σ1 | ... | s⁻¹σk]`` is stored as the tuple of simplex
ids ``(σ1, ..., σk)``; the empty tuple is the unit.  Its degree is
Σ (dim σi - 1).

Sign conventions, fixed once:

* ``D[s⁻¹σ] = -[s⁻¹∂σ] + Σ_{j=1}^{n-1} (-1)^{j-1} [s⁻¹σ|[0..j] | s⁻¹σ|[j..n]]``,
  i.e. the quadratic term carries (-1)^{deg s⁻¹a} for the front factor a
  of chain degree j;
* ``D(xy) = D(x) y + (-1)^{deg x} x D(y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .chain_algebra import Combination, IntegerComplex
from .chains import normalized_boundary, reduced_coproduct
from .simplicial import ReducedSimplicialSet, apply_face

Word = tuple  # tuple[str, ...]; shared by cobar monomials and necklace words


@dataclass(frozen=True)
class TruncationPolicy:
    """Finite window on an infinite-rank graded algebra.

    ``max_length=None`` means unbounded, which is only finite when the
    space has no nondegenerate edges.
    """

    max_degree: int
    max_length: int | None = None

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.max_length is not None and self.max_length < 0:
            raise ValueError("max_length must be >= 0")

    def admits(self, word: Word) -> bool:
        return self.max_length is None or len(word) <= self.max_length

    def to_dict(self) -> dict:
        return {"max_degree": self.max_degree,
                "max_length": "unbounded" if self.max_length is None else self.max_length}


def word_degree(word: Word, K: ReducedSimplicialSet) -> int:
    dims = K.dims
    return sum(dims[s] - 1 for s in word)


def word_bases(K: ReducedSimplicialSet, policy: TruncationPolicy) -> dict[int, list[Word]]:
    """All words of degree <= N and length <= L, per degree, ordered by (length, lex).

    Lexicographic order compares simplices by their canonical position in K.
    """
    letters = K.positive_simplices()
    has_edges = bool(K.edges())
    L = policy.max_length
    N = policy.max_degree
    if L is None:
        if has_edges:
            raise ValueError(f"{K.name} has nondegenerate edges; an unbounded word length "
                             "gives infinite rank in every degree")
        L = N
    out: dict[int, list[Word]] = {n: [] for n in range(N + 1)}
    deg = {s: K.dim(s) - 1 for s in letters}
    min_deg = min(deg.values(), default=0)
    for length in range(L + 1):
        if length * min_deg > N:
            break

        def extend(prefix, budget, remaining):
            if remaining == 0:
                out[N - budget].append(tuple(prefix))
                return
            for s in letters:
                d = deg[s]
                if d + (remaining - 1) * min_deg <= budget:
                    prefix.append(s)
                    extend(prefix, budget - d, remaining - 1)
                    prefix.pop()

        extend([], N, length)
    return out


def cobar_basis(K: ReducedSimplicialSet, n: int, policy: TruncationPolicy) -> list[Word]:
    """Monomials of degree ``n`` and length <= L in canonical order."""
    if n > policy.max_degree:
        raise ValueError(f"degree {n} exceeds the policy bound {policy.max_degree}")
    return word_bases(K, TruncationPolicy(n, policy.max_length))[n]


def generator_differential(sid: str, K: ReducedSimplicialSet) -> Combination:
    """D[s⁻¹σ] as a combination of monomials of length 1 and 2."""
    cache = K._cache.setdefault("cobar_generator", {})
    if sid in cache:
        return cache[sid]
    out = Combination()
    if K.dim(sid) >= 2:
        for face, c in normalized_boundary(sid, K).items():
            out.add_term((face,), -c)
        for front, back in reduced_coproduct(sid, K):
            out.add_term((front, back), (-1) ** (K.dim(front) - 1))
    cache[sid] = out
    return out


def cobar_differential(m: Word, K: ReducedSimplicialSet, max_length: int | None = None) -> Combination:
    """D(m) by the Leibniz rule; terms longer than ``max_length`` are dropped."""
    out = Combination()
    dims = K.dims
    deg = 0
    for i, s in enumerate(m):
        dg = generator_differential(s, K)
        if dg:
            sign = -1 if deg % 2 else 1
            prefix, suffix = m[:i], m[i + 1:]
            for t, c in dg.items():
                w = prefix + t + suffix
                if max_length is None or len(w) <= max_length:
                    out.add_term(w, sign * c)
        deg += dims[s] - 1
    return out


def apply_differential(x: Combination, K: ReducedSimplicialSet, max_length: int | None = None) -> Combination:
    out = Combination()
    for m, c in x.items():
        out.add_scaled(cobar_differential(m, K, max_length), c)
    return out


def cobar_product(m1: Word, m2: Word) -> Word:
    """Concatenation of monomials."""
    return tuple(m1) + tuple(m2)


def multiply(x: Combination, y: Combination) -> Combination:
    """Bilinear extension of concatenation to combinations of words."""
    out = Combination()
    for a, ca in x.items():
        for b, cb in y.items():
            out.add_term(a + b, ca * cb)
    return out


def cobar_complex(K: ReducedSimplicialSet, policy: TruncationPolicy) -> IntegerComplex:
    """Degrees 0..N of Ω C_*(K), modulo monomials longer than L.

    D never shortens a monomial, so the span of long monomials is a
    subcomplex and the quotient is a complex.
    """
    bases = word_bases(K, policy)
    L = policy.max_length
    return IntegerComplex.from_differential(
        bases, lambda m: cobar_differential(m, K, L),
        truncation={"model": "cobar", "space": K.name, **policy.to_dict()})


# ---------------------------------------------------------------------------
# degree-0 ring presentation
# ---------------------------------------------------------------------------

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _render_word(word: Word, var: str) -> str:
    if not word:
        return "1"
    parts = []
    k = 0
    while k < len(word):
        j = k
        while j < len(word) and word[j] == word[k]:
            j += 1
        power = j - k
        parts.append(f"{var}_{word[k]}" + (str(power).translate(_SUPERSCRIPT) if power > 1 else ""))
        k = j
    return "".join(parts)


@dataclass
class RingRelation:
    simplex: str
    polynomial: Combination           # Σ c_w A_w = 0, w a word in the edges
    monoid: tuple[Word, Word]         # lhs = rhs in the variables Â_e = 1 + A_e

    def raw_string(self) -> str:
        terms = sorted(self.polynomial.items(), key=lambda kv: (len(kv[0]), kv[0]))
        out = ""
        for k, (w, c) in enumerate(terms):
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = ("-" if c < 0 else "") if k == 0 else (" - " if c < 0 else " + ")
            out += sign + mag + _render_word(w, "A")
        return (out or "0") + " = 0"

    def monoid_string(self) -> str:
        lhs, rhs = self.monoid
        return f"{_render_word(lhs, 'Â')} = {_render_word(rhs, 'Â')}"

    def to_dict(self) -> dict:
        return {"simplex": self.simplex, "raw": self.raw_string(), "monoid": self.monoid_string()}


@dataclass
class RingPresentation:
    space: str
    generators: list[str]
    relations: list[RingRelation] = field(default_factory=list)
    trivial: list[str] = field(default_factory=list)

    @property
    def is_free(self) -> bool:
        return not self.relations

    def monoid_strings(self) -> list[str]:
        return [r.monoid_string() for r in self.relations]

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "generators": [f"A_{e}" for e in self.generators],
            "monoid_generators": [f"Â_{e} = 1 - A_{e}" for e in self.generators],
            "free": self.is_free,
            "relations": [r.to_dict() for r in self.relations],
            "trivial_relations_from": self.trivial,
        }

    def text(self) -> str:
        lines = [f"H_0 presentation for {self.space}",
                 "generators: " + (", ".join(f"A_{e}" for e in self.generators) or "none"),
                 "monoid variables: Â_e = 1 - A_e"]
        if self.is_free:
            lines.append(f"free on {', '.join(f'Â_{e}' for e in self.generators) or 'no generators'}")
        for r in self.relations:
            lines.append(f"  [{r.simplex}]  {r.raw_string():<32}  <=>  {r.monoid_string()}")
        return "\n".join(lines)


def _substitute_hat(poly: Combination) -> Combination:
    """Rewrite Σ c_w A_w in the variables Â_e = 1 - A_e (so A_e = 1 - Â_e)."""
    out = Combination()
    for w, c in poly.items():
        for keep in product((True, False), repeat=len(w)):
            sub = tuple(e for e, k in zip(w, keep) if k)
            out.add_term(sub, c * (-1) ** keep.count(True))
    return out


def h0_ring_presentation(K: ReducedSimplicialSet) -> RingPresentation:
    """Generators and relations of H_0 of the cobar construction.

    One generator A_e per nondegenerate edge; every nondegenerate 2-simplex
    τ contributes D[s⁻¹τ] = 0.  With Â_e = 1 - A_e (and Â = 1 for a
    degenerate edge) that relation reads Â_{d1 τ} = Â_{d2 τ} Â_{d0 τ}.
    """
    pres = RingPresentation(K.name, list(K.edges()))
    for tau in K.simplices.get(2, ()):
        poly = Combination({w: c for w, c in generator_differential(tau, K).items()})
        r = K.ref(tau)

        def hat(i):
            f = apply_face(i, r, K)
            return () if f.is_degenerate() else (f.base,)

        lhs, rhs = hat(1), hat(2) + hat(0)
        expected = Combination.of(lhs).add_scaled(Combination.of(rhs), -1)
        got = _substitute_hat(poly)
        if got != expected and got != -expected:
            raise AssertionError(f"{tau}: monoid form {expected} does not match D = {got}")
        if not poly:
            pres.trivial.append(tau)
            continue
        if not lhs and rhs:
            lhs, rhs = rhs, lhs
        pres.relations.append(RingRelation(tau, poly, (lhs, rhs)))
    return pres
