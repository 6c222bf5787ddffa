"""Small exact linear algebra over the rationals.

Used by the quaternion layer to solve the 4- and 4n-dimensional rational
systems behind conjugation, Sylvester equations and eigenvector search.
Matrices are plain lists of lists of Fraction; everything is exact.
"""

from fractions import Fraction
from typing import Optional


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a copy of `rows`.

    Returns (R, pivots) where pivots[i] is the column of the pivot in row i.
    Pivot choice is deterministic: first nonzero entry in column order.
    """
    mat = [list(row) for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if mat[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[pr], mat[pivot_row] = mat[pivot_row], mat[pr]
        inv = Fraction(1) / mat[pr][c]
        mat[pr] = [inv * v for v in mat[pr]]
        for r in range(nrows):
            if r != pr and mat[r][c] != 0:
                f = mat[r][c]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[pr])]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    return mat, pivots


def kernel(rows: list[list[Fraction]], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Canonical basis of the right null space {x : rows*x = 0}.

    Basis vectors are indexed by free columns in ascending order; the vector
    for free column f has x_f = 1 and x_p = -R[i][f] at each pivot column p.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(c == f)) for c in range(ncols)] for f in range(ncols)]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(vec)
    return basis


def solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Particular solution of rows*x = rhs with free variables set to 0, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        sol[p] = red[i][ncols]
    return sol
