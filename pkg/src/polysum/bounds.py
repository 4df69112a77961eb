"""Closed-form face-count bounds for Minkowski sums of convex polytopes.

All outputs are exact integers.  The cyclic-polytope face counts that feed
the two-summand bound are taken from an actual exact hull of moment-curve
points by default; a Gale-evenness closed form is available as a fast path
and is cross-checked against the hull in the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hull import PointSet, convex_hull


def binom(a: int, b: int) -> int:
    """Binomial coefficient with C(a, 0) = 1 for every a, else 0 outside 0 <= b <= a."""
    if b == 0:
        return 1
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class VertexProfile:
    """Summand vertex counts n_1..n_r in ambient dimension d."""

    n: tuple[int, ...]
    d: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one summand")
        if any(ni < 1 for ni in self.n):
            raise ValueError("every summand needs at least one vertex")
        if self.d < 1:
            raise ValueError("ambient dimension must be positive")

    @property
    def r(self) -> int:
        return len(self.n)


def phi(ell: int, n: tuple[int, ...]) -> int:
    """Number of spanning subsets of size ell of a partitioned set with part sizes n.

    Equals the sum over compositions (s_1..s_r) of ell with 1 <= s_i <= n_i
    of prod C(n_i, s_i); this is the kernel of the trivial upper bound.
    """
    r = len(n)
    if r < 1:
        raise ValueError("need at least one part")
    if ell < r:
        raise ValueError(f"phi undefined for ell={ell} < r={r}")
    # coefficient extraction from prod_i sum_{s=1..n_i} C(n_i, s) z^s
    poly = [1]
    for ni in n:
        factor = [0] + [math.comb(ni, s) for s in range(1, ni + 1)]
        out = [0] * (len(poly) + len(factor) - 1)
        for i, a in enumerate(poly):
            if a:
                for j, b in enumerate(factor):
                    if b:
                        out[i + j] += a * b
        poly = out
    return poly[ell] if ell < len(poly) else 0


def phi_brute_force(ell: int, n: tuple[int, ...]) -> int:
    """Independent oracle: count spanning ell-subsets by explicit enumeration."""
    parts = []
    start = 0
    for ni in n:
        parts.append(range(start, start + ni))
        start += ni
    total = 0
    for subset in itertools.combinations(range(start), ell):
        s = set(subset)
        if all(any(i in s for i in part) for part in parts):
            total += 1
    return total


def trivial_upper_bound(k: int, profile: VertexProfile) -> int:
    """Upper bound on the number of k-faces of a Minkowski sum: phi(k + r)."""
    if k < 0 or k > profile.d - 1:
        raise ValueError(f"face dimension k={k} outside 0..{profile.d - 1}")
    return phi(k + profile.r, profile.n)


def three_polytope_bounds(m1: int, m2: int) -> tuple[int, int, int]:
    """Tight (f0, f1, f2) bounds for the sum of two 3-polytopes with m1, m2 facets."""
    if m1 < 4 or m2 < 4:
        raise ValueError("a 3-polytope has at least 4 facets")
    f0 = 4 * m1 * m2 - 8 * m1 - 8 * m2 + 16
    f1 = 8 * m1 * m2 - 17 * m1 - 17 * m2 + 40
    f2 = 4 * m1 * m2 - 9 * m1 - 9 * m2 + 26
    return f0, f1, f2


def moment_curve_points(dim: int, count: int) -> PointSet:
    """count points on the moment curve t -> (t, t^2, ..., t^dim), t = 1..count."""
    rows = [[Fraction(t) ** e for e in range(1, dim + 1)] for t in range(1, count + 1)]
    return PointSet.from_rows(rows)


@lru_cache(maxsize=None)
def cyclic_fvector_hull(dim: int, n: int) -> tuple[int, ...]:
    """f-vector of the cyclic polytope C_dim(n) from an exact hull."""
    if n < dim + 1:
        raise ValueError("cyclic polytope needs at least dim+1 vertices")
    return convex_hull(moment_curve_points(dim, n)).f_vector


@lru_cache(maxsize=None)
def cyclic_fvector_gale(dim: int, n: int) -> tuple[int, ...]:
    """f-vector of C_dim(n) via Gale's evenness condition (closed-form fast path)."""
    if n < dim + 1:
        raise ValueError("cyclic polytope needs at least dim+1 vertices")

    def is_facet(s: tuple[int, ...]) -> bool:
        inside = set(s)
        outside = [i for i in range(n) if i not in inside]
        for a, b in itertools.combinations(outside, 2):
            if sum(1 for x in s if a < x < b) % 2:
                return False
        return True

    facets = [s for s in itertools.combinations(range(n), dim) if is_facet(s)]
    faces = set()
    for s in facets:
        for size in range(1, dim + 1):
            faces.update(itertools.combinations(s, size))
    counts = [0] * dim
    for f in faces:
        counts[len(f) - 1] += 1
    return tuple(counts)


def two_polytope_bound(k: int, d: int, n1: int, n2: int, method: str = "hull") -> int:
    """Tight upper bound on f_{k-1}(P1 + P2) for two d-polytopes, 1 <= k <= d."""
    if d < 3:
        raise ValueError("two-polytope bound stated for d >= 3")
    if not 1 <= k <= d:
        raise ValueError(f"k={k} outside 1..{d}")
    if n1 <= d or n2 <= d:
        raise ValueError("each summand needs at least d+1 vertices")
    fv = cyclic_fvector_hull(d + 1, n1 + n2) if method == "hull" else cyclic_fvector_gale(d + 1, n1 + n2)
    fk_cyclic = fv[k]
    correction = 0
    for i in range((d + 1) // 2 + 1):
        correction += binom(d + 1 - i, k + 1 - i) * (
            binom(n1 - d - 2 + i, i) + binom(n2 - d - 2 + i, i)
        )
    return fk_cyclic - correction


def zonotope_bound(l: int, n: int, d: int) -> int:
    """Maximum number of l-faces of a Minkowski sum with n non-parallel edges."""
    if not 0 <= l <= d - 1:
        raise ValueError(f"l={l} outside 0..{d - 1}")
    if n < 1:
        raise ValueError("need at least one edge")
    return 2 * binom(n, l) * sum(binom(n - l - 1, j) for j in range(d - l))


def zonotope_points(generators) -> PointSet:
    """All subset sums of the generator segments [0, g]; contains every vertex."""
    gens = [[Fraction(x) for x in g] for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    d = len(gens[0])
    rows = []
    for picks in itertools.product((0, 1), repeat=len(gens)):
        rows.append([sum(e * g[c] for e, g in zip(picks, gens)) for c in range(d)])
    return PointSet.from_rows(rows, ambient_dim=d)


def many_summand_f0_bounds(profile: VertexProfile) -> tuple[int, int]:
    """Vertex-count bounds for r >= d summands: (Sanyal's bound, Weibel's tight bound)."""
    r, d, n = profile.r, profile.d, profile.n
    if not r >= d >= 3:
        raise ValueError("bounds stated for r >= d >= 3")
    prod_all = math.prod(n)
    sanyal = math.floor((1 - Fraction(1, (d + 1) ** d)) * prod_all)
    alpha = 2 * (d - 2 * (d // 2))
    weibel = alpha
    for j in range(1, d):
        sign = (-1) ** (d - 1 - j)
        coeff = binom(r - 1 - j, d - 1 - j)
        if coeff == 0:
            continue
        inner = 0
        for subset in itertools.combinations(range(r), j):
            inner += math.prod(n[i] for i in subset) - alpha
        weibel += sign * coeff * inner
    return sanyal, weibel
