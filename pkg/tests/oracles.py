"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd


def coface(i: int):
    return lambda k: k if k < i else k + 1


def codegeneracy(i: int):
    return lambda k: k if k <= i else k - 1


def monotone_map(word, source_dim: int) -> tuple[int, ...]:
    """The map [m] -> [source_dim] represented by an operator word.

    The word acts on a simplex x by precomposition, rightmost letter
    first, so the leftmost letter's coface/codegeneracy is applied first
    to the points of [m].
    """
    dim = source_dim
    for kind, _ in reversed(word):
        dim += 1 if kind == "s" else -1
    points = list(range(dim + 1))
    for kind, i in word:
        f = coface(i) if kind == "d" else codegeneracy(i)
        points = [f(p) for p in points]
    return tuple(points)


def random_word(rng: random.Random, max_len: int = 6, max_dim: int = 5):
    """A dimensionally valid operator word, built from the right."""
    source = rng.randint(0, max_dim)
    dim = source
    letters = []
    for _ in range(rng.randint(0, max_len)):
        choices = []
        if dim > 0:
            choices.append("d")
        if dim < max_dim:
            choices.append("s")
        if not choices:
            break
        kind = rng.choice(choices)
        i = rng.randint(0, dim if kind == "s" else dim)
        letters.append((kind, i))
        dim += 1 if kind == "s" else -1
    return list(reversed(letters)), source


def _det(rows) -> int:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return int(det)


def invariant_factors_by_minors(M) -> tuple[int, ...]:
    """d_k = g_k / g_{k-1}, g_k the gcd of all k×k minors."""
    rows, cols = len(M), len(M[0]) if M else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in combinations(range(rows), k):
            for C in combinations(range(cols), k):
                g = gcd(g, _det([[M[r][c] for c in C] for r in R]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def ordered_partitions_count(m: int, d: int) -> int:
    """Number of ordered partitions of an m-set into d nonempty blocks."""
    return sum((-1) ** j * comb(d, j) * (d - j) ** m for j in range(d + 1))


def shuffle_sign_by_inversions(mu, p: int, q: int) -> int:
    """Sign of the (p,q)-shuffle permutation, counted by inversions."""
    nu = [k for k in range(p + q) if k not in set(mu)]
    perm = list(mu) + nu
    inv = sum(1 for a, b in combinations(range(p + q), 2) if perm[a] > perm[b])
    return (-1) ** inv


def all_words(letters, max_len: int):
    return [w for n in range(max_len + 1) for w in product(letters, repeat=n)]
