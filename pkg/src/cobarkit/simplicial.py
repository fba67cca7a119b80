"""
Simplicial operators and finite reduced simplicial sets.

A reduced simplicial set is presented by its nondegenerate simplices
together with face tables.  Arbitrary simplices only ever exist as
:class:`SimplexRef` values, i.e. a degeneracy word applied to a
nondegenerate base simplex.  Faces of such references are computed by
pushing the face operator through the degeneracy word with the simplicial
identities.

Operators are written in composition order: the word
``s_{i1} ... s_{ik} d_{j1} ... d_{jl}`` acts on a simplex by applying
``d_{jl}`` first and ``s_{i1}`` last.  In normal form the degeneracy
indices strictly decrease and the face indices strictly increase.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

VERTEX = "*"


class SimplicialError(ValueError):
    """Raised for malformed operators, references or presentations."""


# ---------------------------------------------------------------------------
# operator words
# ---------------------------------------------------------------------------

def _check_word(word: Sequence[tuple[str, int]], source_dim: int) -> int:
    """Return the dimension reached by ``word`` acting on a ``source_dim``-simplex."""
    dim = source_dim
    for kind, i in reversed(word):
        if i < 0 or i > dim:
            raise SimplicialError(f"{kind}_{i} is not defined on a {dim}-simplex")
        if kind == "d":
            if dim == 0:
                raise SimplicialError("a 0-simplex has no faces")
            dim -= 1
        elif kind == "s":
            dim += 1
        else:
            raise SimplicialError(f"unknown operator letter {kind!r}")
    return dim


def normalize_word(word: Iterable[tuple[str, int]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rewrite an operator word into (degeneracies, faces) normal form.

    Uses the simplicial identities as left-to-right rewrite rules until no
    rule applies.  The input word must already be dimensionally valid.
    """
    w = list(word)
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(w) - 1:
            (a, i), (b, j) = w[k], w[k + 1]
            if a == "d" and b == "s":
                if i < j:
                    w[k:k + 2] = [("s", j - 1), ("d", i)]
                elif i == j or i == j + 1:
                    del w[k:k + 2]
                else:
                    w[k:k + 2] = [("s", j), ("d", i - 1)]
                changed = True
                k = max(k - 1, 0)
                continue
            if a == "s" and b == "s" and i <= j:
                w[k:k + 2] = [("s", j + 1), ("s", i)]
                changed = True
                k = max(k - 1, 0)
                continue
            if a == "d" and b == "d" and i >= j:
                w[k:k + 2] = [("d", j), ("d", i + 1)]
                changed = True
                k = max(k - 1, 0)
                continue
            k += 1
    degens = tuple(i for kind, i in w if kind == "s")
    faces = tuple(i for kind, i in w if kind == "d")
    # normal form puts every degeneracy before every face
    assert w == [("s", i) for i in degens] + [("d", j) for j in faces], w
    return degens, faces


@dataclass(frozen=True)
class SimplicialOperator:
    """An operator ``s_{i1}...s_{ik} d_{j1}...d_{jl}`` in Eilenberg-Zilber normal form."""

    degeneracies: tuple[int, ...]
    faces: tuple[int, ...]
    source_dim: int

    def __post_init__(self):
        object.__setattr__(self, "degeneracies", tuple(self.degeneracies))
        object.__setattr__(self, "faces", tuple(self.faces))
        if any(a <= b for a, b in zip(self.degeneracies, self.degeneracies[1:])):
            raise SimplicialError(f"degeneracies {self.degeneracies} not strictly decreasing")
        if any(a >= b for a, b in zip(self.faces, self.faces[1:])):
            raise SimplicialError(f"faces {self.faces} not strictly increasing")
        if self.source_dim < 0:
            raise SimplicialError("negative source dimension")
        _check_word(self.word, self.source_dim)

    @property
    def target_dim(self) -> int:
        return self.source_dim - len(self.faces) + len(self.degeneracies)

    @property
    def word(self) -> list[tuple[str, int]]:
        return [("s", i) for i in self.degeneracies] + [("d", j) for j in self.faces]

    @classmethod
    def from_word(cls, word: Sequence[tuple[str, int]], source_dim: int) -> "SimplicialOperator":
        """Normal form of an arbitrary valid word (composition order, rightmost first)."""
        _check_word(word, source_dim)
        degens, faces = normalize_word(word)
        return cls(degens, faces, source_dim)

    @classmethod
    def identity(cls, dim: int) -> "SimplicialOperator":
        return cls((), (), dim)

    @classmethod
    def face(cls, i: int, dim: int) -> "SimplicialOperator":
        return cls((), (i,), dim)

    @classmethod
    def degeneracy(cls, i: int, dim: int) -> "SimplicialOperator":
        return cls((i,), (), dim)

    def __str__(self):
        letters = [f"s{i}" for i in self.degeneracies] + [f"d{j}" for j in self.faces]
        return "".join(letters) or f"id[{self.source_dim}]"


def compose_operators(first: SimplicialOperator, second: SimplicialOperator) -> SimplicialOperator:
    """Normal form of the operator "apply ``first``, then ``second``"."""
    if first.target_dim != second.source_dim:
        raise SimplicialError(
            f"cannot compose: first lands in dimension {first.target_dim}, "
            f"second starts in dimension {second.source_dim}")
    return SimplicialOperator.from_word(second.word + first.word, first.source_dim)


# ---------------------------------------------------------------------------
# simplices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SimplexRef:
    """A possibly degenerate simplex ``s_{i1}...s_{ik}(base)``.

    ``dim`` is the dimension of the represented simplex, not of the base.
    """

    degeneracies: tuple[int, ...]
    base: str
    dim: int

    def is_degenerate(self) -> bool:
        return bool(self.degeneracies)

    @property
    def base_dim(self) -> int:
        return self.dim - len(self.degeneracies)

    def __str__(self):
        if not self.degeneracies:
            return self.base
        return "".join(f"s{i}" for i in self.degeneracies) + f"({self.base})"


@dataclass(frozen=True)
class ReducedSimplicialSet:
    """A simplicial set with a single vertex, given by nondegenerate simplices.

    ``simplices`` maps each dimension n >= 1 to the ordered ids of its
    nondegenerate n-simplices; ``faces`` maps every id to its n+1 faces
    d_0..d_n.  The vertex is always ``"*"``.
    """

    name: str
    simplices: dict[int, tuple[str, ...]]
    faces: dict[str, tuple[SimplexRef, ...]]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(
            self, "simplices",
            {int(n): tuple(ids) for n, ids in sorted(self.simplices.items()) if ids})
        object.__setattr__(self, "faces", {k: tuple(v) for k, v in self.faces.items()})

    # lookups -------------------------------------------------------------
    @property
    def dims(self) -> dict[str, int]:
        d = self._cache.get("dims")
        if d is None:
            d = {VERTEX: 0}
            for n, ids in self.simplices.items():
                for sid in ids:
                    d[sid] = n
            self._cache["dims"] = d
        return d

    @property
    def order(self) -> dict[str, int]:
        """Canonical position of each simplex: by dimension, then listing order."""
        o = self._cache.get("order")
        if o is None:
            o = {VERTEX: 0}
            for n in sorted(self.simplices):
                for sid in self.simplices[n]:
                    o[sid] = len(o)
            self._cache["order"] = o
        return o

    def dim(self, sid: str) -> int:
        try:
            return self.dims[sid]
        except KeyError:
            raise SimplicialError(f"unknown simplex {sid!r} in {self.name}") from None

    def positive_simplices(self) -> list[str]:
        """Nondegenerate simplices of dimension >= 1 in canonical order."""
        return [sid for n in sorted(self.simplices) for sid in self.simplices[n]]

    def all_simplices(self) -> list[str]:
        return [VERTEX] + self.positive_simplices()

    def edges(self) -> tuple[str, ...]:
        return self.simplices.get(1, ())

    def top_dim(self) -> int:
        return max(self.simplices, default=0)

    def ref(self, sid: str) -> SimplexRef:
        return SimplexRef((), sid, self.dim(sid))

    def __str__(self):
        counts = ", ".join(f"{len(ids)} in dim {n}" for n, ids in self.simplices.items())
        return f"{self.name} (1 vertex; {counts or 'nothing above dim 0'})"


def degenerate_vertex(dim: int) -> SimplexRef:
    """The unique simplex of dimension ``dim`` over the basepoint."""
    return SimplexRef(tuple(range(dim - 1, -1, -1)), VERTEX, dim)


def _degenerate(degens: Sequence[int], ref: SimplexRef) -> SimplexRef:
    """Apply the degeneracy word ``degens`` (composition order) to ``ref``."""
    if not degens:
        return ref
    word = [("s", i) for i in degens] + [("s", i) for i in ref.degeneracies]
    out, faces = normalize_word(word)
    assert not faces
    return SimplexRef(out, ref.base, ref.dim + len(degens))


def apply_face(i: int, r: SimplexRef, K: ReducedSimplicialSet) -> SimplexRef:
    """Normal form of ``d_i r``."""
    if r.dim < 1:
        raise SimplicialError("a 0-simplex has no faces")
    if not 0 <= i <= r.dim:
        raise SimplicialError(f"face index {i} out of range for a {r.dim}-simplex")
    word = [("d", i)] + [("s", k) for k in r.degeneracies]
    degens, faces = normalize_word(word)
    if not faces:
        return SimplexRef(degens, r.base, r.dim - 1)
    (j,) = faces
    try:
        table = K.faces[r.base]
    except KeyError:
        raise SimplicialError(f"unknown base simplex {r.base!r}") from None
    return _degenerate(degens, table[j])


def apply_operator(op: SimplicialOperator, r: SimplexRef, K: ReducedSimplicialSet) -> SimplexRef:
    """Apply a normal-form operator to a simplex reference."""
    if op.source_dim != r.dim:
        raise SimplicialError(f"operator on {op.source_dim}-simplices applied to a {r.dim}-simplex")
    for j in reversed(op.faces):
        r = apply_face(j, r, K)
    return _degenerate(op.degeneracies, r)


def front_face(r: SimplexRef, i: int, K: ReducedSimplicialSet) -> SimplexRef:
    """The restriction of ``r`` to the vertices 0..i."""
    if not 0 <= i <= r.dim:
        raise SimplicialError(f"split index {i} out of range for a {r.dim}-simplex")
    while r.dim > i:
        r = apply_face(r.dim, r, K)
    return r


def back_face(r: SimplexRef, i: int, K: ReducedSimplicialSet) -> SimplexRef:
    """The restriction of ``r`` to the vertices i..n."""
    if not 0 <= i <= r.dim:
        raise SimplicialError(f"split index {i} out of range for a {r.dim}-simplex")
    for _ in range(i):
        r = apply_face(0, r, K)
    return r


def restrict(r: SimplexRef, vertices: Sequence[int], K: ReducedSimplicialSet) -> SimplexRef:
    """The face of ``r`` spanned by the given increasing vertex indices."""
    keep = set(vertices)
    for k in range(r.dim, -1, -1):
        if k not in keep:
            r = apply_face(k, r, K)
    return r


def has_degenerate_edges(K: ReducedSimplicialSet) -> bool:
    """True if some nondegenerate simplex has a degenerate 1-dimensional face."""
    for n in K.simplices:
        if n < 2:
            continue
        for sid in K.simplices[n]:
            r = K.ref(sid)
            for i in range(n):
                for j in range(i + 1, n + 1):
                    if restrict(r, (i, j), K).is_degenerate():
                        return True
    return False


def front_back_restrictions(r: SimplexRef, i: int, K: ReducedSimplicialSet) -> tuple[SimplexRef, SimplexRef]:
    """``(r|[0..i], r|[i..n])`` in normal form."""
    return front_face(r, i, K), back_face(r, i, K)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    name: str
    errors: list[str] = field(default_factory=list)
    identities_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {"check": "simplicial-identities", "space": self.name, "ok": self.ok,
                "identities_checked": self.identities_checked, "errors": list(self.errors)}


def _degeneracy_word_ok(degens: Sequence[int], base_dim: int) -> bool:
    if any(a <= b for a, b in zip(degens, degens[1:])):
        return False
    try:
        _check_word([("s", i) for i in degens], base_dim)
    except SimplicialError:
        return False
    return True


def validate(K: ReducedSimplicialSet) -> ValidationReport:
    """Check reducedness, face-table shapes and all identities d_i d_j = d_{j-1} d_i."""
    report = ValidationReport(K.name)
    err = report.errors
    seen: dict[str, int] = {}
    for n, ids in K.simplices.items():
        if n < 1:
            err.append(f"dimension {n}: only the vertex '*' may live in dimension 0")
            continue
        for sid in ids:
            if sid == VERTEX:
                err.append("'*' is reserved for the unique vertex")
            elif sid in seen:
                err.append(f"{sid}: listed twice (dimensions {seen[sid]} and {n})")
            seen[sid] = n
    dims = {VERTEX: 0, **seen}
    structural_ok = not err
    for sid, n in seen.items():
        table = K.faces.get(sid)
        if table is None:
            err.append(f"{sid}: no face table")
            structural_ok = False
            continue
        if len(table) != n + 1:
            err.append(f"{sid}: has {len(table)} faces, expected {n + 1}")
            structural_ok = False
            continue
        for i, f in enumerate(table):
            if f.base not in dims:
                err.append(f"{sid}: d{i} refers to unknown simplex {f.base!r}")
                structural_ok = False
                continue
            base_dim = dims[f.base]
            if f.base_dim != base_dim:
                err.append(f"{sid}: d{i} reference to {f.base!r} carries a wrong base dimension")
                structural_ok = False
            if not _degeneracy_word_ok(f.degeneracies, base_dim):
                err.append(f"{sid}: d{i} has an invalid degeneracy word {list(f.degeneracies)}")
                structural_ok = False
            elif f.dim != n - 1:
                err.append(f"{sid}: dimension error, d{i} = {f} has dimension {f.dim}, expected {n - 1}")
                structural_ok = False
    extra = set(K.faces) - set(seen)
    for sid in sorted(extra):
        err.append(f"{sid}: face table for an unlisted simplex")
    if not structural_ok:
        return report
    for n in sorted(K.simplices):
        if n < 2:
            continue
        for sid in K.simplices[n]:
            r = K.ref(sid)
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = apply_face(i, apply_face(j, r, K), K)
                    rhs = apply_face(j - 1, apply_face(i, r, K), K)
                    report.identities_checked += 1
                    if lhs != rhs:
                        err.append(f"{sid}: d{i}d{j} = {lhs} but d{j - 1}d{i} = {rhs}")
    return report


# ---------------------------------------------------------------------------
# construction, JSON, builtins
# ---------------------------------------------------------------------------

def _face_ref(spec, dims: dict[str, int]) -> SimplexRef:
    if isinstance(spec, SimplexRef):
        return spec
    if isinstance(spec, str):
        spec = {"degeneracies": [], "base": spec}
    degens = tuple(int(i) for i in spec.get("degeneracies", ()))
    base = spec["base"]
    base_dim = dims.get(base, -len(degens) - 1)  # unknown bases get caught by validate()
    return SimplexRef(degens, base, base_dim + len(degens))


def simplicial_set(name: str, simplices: dict[int, Sequence[tuple[str, Sequence]]]) -> ReducedSimplicialSet:
    """Build a reduced simplicial set from ``{dim: [(id, faces), ...]}``.

    Faces are given as plain ids, ``SimplexRef`` values or JSON-style
    ``{"degeneracies": [...], "base": id}`` dicts.
    """
    dims = {VERTEX: 0}
    for n, entries in simplices.items():
        for sid, _ in entries:
            dims.setdefault(sid, int(n))
    ids = {int(n): tuple(sid for sid, _ in entries) for n, entries in simplices.items()}
    faces = {sid: tuple(_face_ref(f, dims) for f in fs)
             for entries in simplices.values() for sid, fs in entries}
    return ReducedSimplicialSet(name, ids, faces)


def from_json(data) -> ReducedSimplicialSet:
    """Parse the JSON presentation (a dict or a JSON string).

    Raises :class:`SimplicialError` when the document does not follow the
    schema; identity violations are left to :func:`validate`.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SimplicialError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "simplices" not in data:
        raise SimplicialError("expected an object with 'name' and 'simplices'")
    name = data.get("name", "unnamed")
    if not isinstance(name, str):
        raise SimplicialError("'name' must be a string")
    table = {}
    try:
        for key, entries in data["simplices"].items():
            n = int(key)
            if n == 0:
                if any(e.get("id") != VERTEX for e in entries):
                    raise SimplicialError("a reduced simplicial set has exactly one vertex '*'")
                continue
            rows = []
            for e in entries:
                faces = e["faces"]
                for f in faces:
                    if not isinstance(f, dict) or "base" not in f:
                        raise SimplicialError(f"{e['id']}: malformed face reference {f!r}")
                rows.append((str(e["id"]), faces))
            table[n] = rows
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, SimplicialError):
            raise
        raise SimplicialError(f"schema violation: {exc!r}") from exc
    return simplicial_set(name, table)


def to_json(K: ReducedSimplicialSet) -> dict:
    return {
        "name": K.name,
        "simplices": {
            str(n): [{"id": sid,
                      "faces": [{"degeneracies": list(f.degeneracies), "base": f.base}
                                for f in K.faces[sid]]}
                     for sid in ids]
            for n, ids in K.simplices.items()
        },
    }


def load(path) -> ReducedSimplicialSet:
    with open(path) as fh:
        return from_json(fh.read())


def _letters(k: int) -> list[str]:
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"e{i}" for i in range(1, k + 1)]


def sphere(n: int) -> ReducedSimplicialSet:
    """Δⁿ with its boundary collapsed to the basepoint."""
    if n < 2:
        raise SimplicialError("sphere:n needs n >= 2 (S^1 is wedge-circles:1)")
    collapsed = degenerate_vertex(n - 1)
    return simplicial_set(f"sphere:{n}", {n: [("sigma", [collapsed] * (n + 1))]})


def wedge_of_circles(k: int) -> ReducedSimplicialSet:
    if k < 1:
        raise SimplicialError("wedge-circles:k needs k >= 1")
    x = degenerate_vertex(0)
    return simplicial_set(f"wedge-circles:{k}", {1: [(e, [x, x]) for e in _letters(k)]})


def torus() -> ReducedSimplicialSet:
    x = degenerate_vertex(0)
    return simplicial_set("torus", {
        1: [("a", [x, x]), ("b", [x, x]), ("c", [x, x])],
        2: [("t1", ["b", "c", "a"]), ("t2", ["a", "c", "b"])],
    })


def projective_plane() -> ReducedSimplicialSet:
    x = degenerate_vertex(0)
    return simplicial_set("rp2", {
        1: [("a", [x, x])],
        2: [("sigma", ["a", degenerate_vertex(1), "a"])],
    })


def collapsed_simplex(n: int) -> ReducedSimplicialSet:
    """Δⁿ with all of its vertices identified; every face is nondegenerate.

    Not part of the named catalog used by the CLI, but useful whenever a
    test needs simplices of dimension >= 3 with nontrivial coproducts.
    """
    from itertools import combinations

    def sid(vs):
        return "v" + "".join(map(str, vs))

    table = {}
    for m in range(1, n + 1):
        rows = []
        for vs in combinations(range(n + 1), m + 1):
            if m == 1:
                fs = [degenerate_vertex(0)] * 2
            else:
                fs = [sid(vs[:i] + vs[i + 1:]) for i in range(m + 1)]
            rows.append((sid(vs), fs))
        table[m] = rows
    return simplicial_set(f"collapsed-simplex:{n}", table)


BUILTIN_NAMES = ("sphere:n", "wedge-circles:k", "torus", "rp2")


def builtin_space(name: str) -> ReducedSimplicialSet:
    """Look up a catalog space such as ``"sphere:3"`` or ``"torus"``."""
    m = re.fullmatch(r"(sphere|wedge-circles|collapsed-simplex):(.*)", name)
    if m:
        kind, param = m.groups()
        if not re.fullmatch(r"\d+", param):
            raise SimplicialError(f"malformed parameter in {name!r}")
        k = int(param)
        K = {"sphere": sphere, "wedge-circles": wedge_of_circles,
             "collapsed-simplex": collapsed_simplex}[kind](k)
    elif name == "torus":
        K = torus()
    elif name == "rp2":
        K = projective_plane()
    else:
        raise SimplicialError(f"unknown builtin space {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    report = validate(K)
    if not report.ok:  # pragma: no cover - catalog entries are fixed
        raise SimplicialError("; ".join(report.errors))
    return K
