"""Exact rational linear algebra: sparse matrices, rank and kernel dimension.

Everything is computed over the rationals with arbitrary precision.  Rank uses
fraction-free (Bareiss) elimination on integer rows obtained by clearing
denominators, so intermediate entries stay integral and bounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

# Exact rational scalar used throughout the package.  Python's Fraction is
# already normalized (gcd 1, positive denominator, 0 == 0/1).
Rational = Fraction


class RatMatrix:
    """Sparse matrix over the rationals, keyed by (row, col).

    Immutable after construction; missing entries are zero.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        cleaned = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) out of bounds for {rows}x{cols}")
            v = Fraction(v)
            if v != 0:
                cleaned[(i, j)] = v
        self.entries = cleaned

    @classmethod
    def from_rows(cls, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        entries = {}
        for i, row in enumerate(row_lists):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v != 0:
                    entries[(i, j)] = Fraction(v)
        return cls(rows, cols, entries)

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    def transpose(self):
        return RatMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def to_int_rows(self):
        """Dense integer rows, each scaled by the lcm of its denominators."""
        rows = []
        for i in range(self.rows):
            row = [Fraction(0)] * self.cols
            for (r, j), v in self.entries.items():
                if r == i:
                    row[j] = v
            denom = lcm(*(v.denominator for v in row)) if any(row) else 1
            rows.append([int(v * denom) for v in row])
        return rows

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"


def rank(m: RatMatrix) -> int:
    """Rank of m over the rationals, by fraction-free Bareiss elimination."""
    a = [row for row in m.to_int_rows() if any(row)]
    n_rows, n_cols = len(a), m.cols
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n_rows):
            if all(x == 0 for x in a[i][c:]):
                continue
            for j in range(c + 1, n_cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def kernel_dim(m: RatMatrix) -> int:
    """Dimension of the right null space: cols - rank."""
    return m.cols - rank(m)


def solve(m: RatMatrix, rhs) -> list | None:
    """One exact solution of m x = rhs, or None if the system is inconsistent.

    Free variables are set to zero.  Plain rational Gaussian elimination;
    intended for the small systems used when re-expressing invariants.
    """
    a = []
    for i in range(m.rows):
        row = [m[(i, j)] for j in range(m.cols)] + [Fraction(rhs[i])]
        a.append(row)
    n_rows, n_cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1) / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [v - factor * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n_rows):
        if a[i][n_cols] != 0:
            return None
    x = [Fraction(0)] * n_cols
    for row_idx, c in enumerate(pivots):
        x[c] = a[row_idx][n_cols]
    return x
