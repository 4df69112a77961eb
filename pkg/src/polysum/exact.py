"""Exact rational scalars, matrices, determinants, and affine rank.

Every geometric predicate in this package bottoms out here.  Scalars are
``fractions.Fraction`` (arbitrary precision, always canonical); matrices are
immutable row-major tuples.  Determinants run fraction-free (Bareiss) on
integer rows after clearing denominators, with a plain cofactor expansion
kept as an independent cross-check.  No floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class DimensionError(ValueError):
    """Raised when matrix/point dimensions do not match an operation."""


def rat(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not allowed in exact arithmetic; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def rat_to_str(q: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"entry count {len(self.entries)} != rows*cols {self.rows * self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise DimensionError("ragged rows")
        return cls(n, m, tuple(rat(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise DimensionError("non-square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            ai = a[i]
            ak = a[k]
            f = ai[k]
            for j in range(k + 1, n):
                # exact division: Bareiss guarantees divisibility by the previous pivot
                ai[j] = (pivot * ai[j] - f * ak[j]) // prev
            ai[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _clear_row_denominators(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return (int rows, product of the scale factors)."""
    out = []
    scale = 1
    for r in rows:
        l = 1
        for x in r:
            l = l * x.denominator // math.gcd(l, x.denominator)
        out.append([int(x * l) for x in r])
        scale *= l
    return out, scale


def determinant(m: ExactMatrix) -> Fraction:
    """Exact determinant of a square rational matrix (fraction-free core)."""
    if not m.is_square:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    int_rows, scale = _clear_row_denominators(m.row_lists())
    return Fraction(int_det(int_rows), scale)


def det_rows(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix given as rows of rationals/ints."""
    return determinant(ExactMatrix.from_rows(rows))


def det_sign_rows(rows: Sequence[Sequence]) -> int:
    """Sign (-1/0/1) of the determinant; skips the final rational division."""
    frac_rows = [[rat(x) for x in r] for r in rows]
    n = len(frac_rows)
    if any(len(r) != n for r in frac_rows):
        raise DimensionError("non-square matrix")
    int_rows, _ = _clear_row_denominators(frac_rows)
    d = int_det(int_rows)
    return (d > 0) - (d < 0)


def determinant_cofactor(m: ExactMatrix) -> Fraction:
    """Independent determinant oracle: recursive cofactor expansion."""
    if not m.is_square:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")

    def rec(rows: list[list[Fraction]]) -> Fraction:
        n = len(rows)
        if n == 0:
            return Fraction(1)
        if n == 1:
            return rows[0][0]
        total = Fraction(0)
        for j, head in enumerate(rows[0]):
            if head == 0:
                continue
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = head * rec(minor)
            total += term if j % 2 == 0 else -term
        return total

    return rec(m.row_lists())


def int_row_space_pivots(rows: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Rank and pivot columns of integer rows via fraction-free elimination.

    Projection of the row space onto the pivot columns is injective, which is
    what the hull code relies on for exact coordinate reduction.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0, ()
    ncols = len(work[0])
    rank = 0
    pivots = []
    for c in range(ncols):
        pivot_row = None
        for i in range(rank, len(work)):
            if work[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        pr = work[rank]
        for i in range(rank + 1, len(work)):
            wi = work[i]
            if wi[c]:
                a, b = pr[c], wi[c]
                g = math.gcd(a, b)
                fa, fb = a // g, b // g
                work[i] = [fa * x - fb * y for x, y in zip(wi, pr)]
        pivots.append(c)
        rank += 1
        if rank == len(work):
            break
    return rank, tuple(pivots)


def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty set of rational points.

    Accepts any iterable of coordinate rows (a PointSet's rows included).
    """
    pts = [list(map(rat, p)) for p in getattr(points, "points", points)]
    if not pts:
        raise ValueError("affine_rank of an empty point set")
    base = pts[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in pts[1:]]
    if not diffs:
        return 0
    int_rows, _ = _clear_row_denominators(diffs)
    rank, _ = int_row_space_pivots(int_rows)
    return rank
