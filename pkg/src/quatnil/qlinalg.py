"""Matrices over a quaternion division algebra, acting on right vector spaces.

Vectors are columns with scalars acting on the right, matrices act on the
left; a matrix represents an endomorphism via u(e_j) = sum_i e_i m[i][j].
Row reduction uses left row operations only, which preserve the right null
space; pivots are normalized by left multiplication with entry inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import AlgebraMismatchError, DimensionMismatchError, PreconditionError
from .qcore import AlgebraParams, Quaternion, rat

ScalarLike = Union[int, Fraction, Quaternion]


class QVector:
    """Immutable column vector of quaternions; scalars act on the right."""

    __slots__ = ("entries", "algebra")

    def __init__(self, entries: Sequence[Quaternion]):
        entries = tuple(entries)
        if not entries:
            raise DimensionMismatchError("empty vector")
        algebra = entries[0].algebra
        if any(e.algebra != algebra for e in entries):
            raise AlgebraMismatchError("mixed algebras in vector")
        self.entries = entries
        self.algebra = algebra

    @classmethod
    def zero(cls, n: int, algebra: AlgebraParams) -> "QVector":
        return cls([algebra.zero()] * n)

    @classmethod
    def unit(cls, n: int, index: int, algebra: AlgebraParams) -> "QVector":
        return cls([algebra.one() if s == index else algebra.zero() for s in range(n)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, s: int) -> Quaternion:
        return self.entries[s]

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "QVector") -> "QVector":
        if self.dim != other.dim:
            raise DimensionMismatchError("vector dimensions differ")
        return QVector([p + q for p, q in zip(self.entries, other.entries)])

    def __sub__(self, other: "QVector") -> "QVector":
        return self + (-other)

    def __neg__(self) -> "QVector":
        return QVector([-q for q in self.entries])

    def scale_right(self, c: ScalarLike) -> "QVector":
        if not isinstance(c, Quaternion):
            c = self.algebra.scalar(rat(c))
        return QVector([q * c for q in self.entries])

    def is_zero(self) -> bool:
        return all(q.is_zero() for q in self.entries)

    def __eq__(self, other):
        return isinstance(other, QVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "(" + ", ".join(str(q) for q in self.entries) + ")^T"


class QMatrix:
    """Immutable dense matrix of quaternions over a fixed algebra."""

    __slots__ = ("rows", "cols", "entries", "algebra")

    def __init__(self, entries: Sequence[Sequence[Quaternion]]):
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionMismatchError("empty matrix")
        cols = len(rows[0])
        if any(len(row) != cols for row in rows):
            raise DimensionMismatchError("ragged rows")
        algebra = rows[0][0].algebra
        if any(e.algebra != algebra for row in rows for e in row):
            raise AlgebraMismatchError("mixed algebras in matrix")
        self.entries = rows
        self.rows = len(rows)
        self.cols = cols
        self.algebra = algebra

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Quaternion]]) -> "QMatrix":
        return cls(rows)

    @classmethod
    def identity(cls, n: int, algebra: AlgebraParams) -> "QMatrix":
        one, zero = algebra.one(), algebra.zero()
        return cls([[one if r == c else zero for c in range(n)] for r in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, algebra: AlgebraParams) -> "QMatrix":
        zero = algebra.zero()
        return cls([[zero] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, diag: Sequence[Quaternion]) -> "QMatrix":
        n = len(diag)
        algebra = diag[0].algebra
        zero = algebra.zero()
        return cls([[diag[r] if r == c else zero for c in range(n)] for r in range(n)])

    @classmethod
    def scalar(cls, n: int, c: ScalarLike, algebra: AlgebraParams) -> "QMatrix":
        if not isinstance(c, Quaternion):
            c = algebra.scalar(rat(c))
        return cls.diagonal([c] * n)

    @classmethod
    def from_columns(cls, columns: Sequence[QVector]) -> "QMatrix":
        n = columns[0].dim
        if any(col.dim != n for col in columns):
            raise DimensionMismatchError("column dimensions differ")
        return cls([[col[r] for col in columns] for r in range(n)])

    # -- basic structure ----------------------------------------------

    def __getitem__(self, rc) -> Quaternion:
        r, c = rc
        return self.entries[r][c]

    def row(self, r: int) -> QVector:
        return QVector(self.entries[r])

    def column(self, c: int) -> QVector:
        return QVector([self.entries[r][c] for r in range(self.rows)])

    def columns(self) -> list[QVector]:
        return [self.column(c) for c in range(self.cols)]

    def submatrix(self, row_range, col_range) -> "QMatrix":
        return QMatrix([[self.entries[r][c] for c in col_range] for r in row_range])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def diagonal_entries(self) -> list[Quaternion]:
        return [self.entries[s][s] for s in range(min(self.rows, self.cols))]

    def has_zero_diagonal(self) -> bool:
        return all(e.is_zero() for e in self.diagonal_entries())

    def is_rational(self) -> bool:
        return all(e.is_central() for row in self.entries for e in row)

    def rational_scalar_value(self) -> Optional[Fraction]:
        """lambda when the matrix equals lambda*I for a rational lambda, else None."""
        if not self.is_square():
            return None
        lam = self.entries[0][0]
        if not lam.is_central():
            return None
        for r in range(self.rows):
            for c in range(self.cols):
                want = lam if r == c else self.algebra.zero()
                if self.entries[r][c] != want:
                    return None
        return lam.w

    # -- arithmetic ----------------------------------------------------

    def _check_same_shape(self, other: "QMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError("matrix shapes differ")
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("matrices over different algebras")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        return QMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-e for e in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatchError("inner dimensions differ")
            if self.algebra != other.algebra:
                raise AlgebraMismatchError("matrices over different algebras")
            zero = self.algebra.zero()
            out = []
            for r in range(self.rows):
                row = []
                for c in range(other.cols):
                    acc = zero
                    for m in range(self.cols):
                        acc = acc + self.entries[r][m] * other.entries[m][c]
                    row.append(acc)
                out.append(row)
            return QMatrix(out)
        if isinstance(other, QVector):
            return self.apply(other)
        return NotImplemented

    def apply(self, x: QVector) -> QVector:
        """Matrix action M*X on a column vector."""
        if self.cols != x.dim:
            raise DimensionMismatchError("matrix-vector dimensions differ")
        zero = self.algebra.zero()
        out = []
        for r in range(self.rows):
            acc = zero
            for c in range(self.cols):
                acc = acc + self.entries[r][c] * x[c]
            out.append(acc)
        return QVector(out)

    def scale_right(self, c: ScalarLike) -> "QMatrix":
        if not isinstance(c, Quaternion):
            c = self.algebra.scalar(rat(c))
        return QMatrix([[e * c for e in row] for row in self.entries])

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square() or k < 0:
            raise DimensionMismatchError("power needs a square matrix and k >= 0")
        acc = QMatrix.identity(self.rows, self.algebra)
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"[{body}]"


# ---------------------------------------------------------------------------
# Operation-style API
# ---------------------------------------------------------------------------


def m_add(a: QMatrix, b: QMatrix) -> QMatrix:
    return a + b


def m_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    return a * b


def m_apply(m: QMatrix, x: QVector) -> QVector:
    return m.apply(x)


def m_scale_right(m: QMatrix, c: ScalarLike) -> QMatrix:
    return m.scale_right(c)


def row_reduce(m: QMatrix) -> tuple[QMatrix, QMatrix, int]:
    """Reduced row echelon form via left row operations.

    Returns (echelon, transform, rank) with transform * m == echelon exactly.
    Pivot choice: first nonzero entry in column order.
    """
    work = [list(row) for row in m.entries]
    trans = [list(row) for row in QMatrix.identity(m.rows, m.algebra).entries]
    pr = 0
    for c in range(m.cols):
        pivot_row = None
        for r in range(pr, m.rows):
            if not work[r][c].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[pr], work[pivot_row] = work[pivot_row], work[pr]
        trans[pr], trans[pivot_row] = trans[pivot_row], trans[pr]
        inv = work[pr][c].inverse()
        work[pr] = [inv * e for e in work[pr]]
        trans[pr] = [inv * e for e in trans[pr]]
        for r in range(m.rows):
            if r != pr and not work[r][c].is_zero():
                f = work[r][c]
                work[r] = [e - f * p for e, p in zip(work[r], work[pr])]
                trans[r] = [e - f * p for e, p in zip(trans[r], trans[pr])]
        pr += 1
        if pr == m.rows:
            break
    return QMatrix(work), QMatrix(trans), pr


def rank(m: QMatrix) -> int:
    return row_reduce(m)[2]


def _pivot_columns(echelon: QMatrix, rk: int) -> list[int]:
    pivots = []
    c = 0
    for r in range(rk):
        while echelon[r, c].is_zero():
            c += 1
        pivots.append(c)
        c += 1
    return pivots


def kernel_basis(m: QMatrix) -> list[QVector]:
    """Canonical basis of the right null space {X : M X = 0}.

    The returned vectors are right-independent over the algebra; general
    kernel elements are their right-linear combinations.
    """
    echelon, _, rk = row_reduce(m)
    pivots = _pivot_columns(echelon, rk)
    pivot_set = set(pivots)
    zero, one = m.algebra.zero(), m.algebra.one()
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = [zero] * m.cols
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -echelon[r, f]
        basis.append(QVector(vec))
    return basis


def solve_right(m: QMatrix, b: QVector) -> Optional[QVector]:
    """Particular solution X of M X = B with free coordinates zero, or None."""
    if b.dim != m.rows:
        raise DimensionMismatchError("right-hand side has wrong dimension")
    echelon, trans, rk = row_reduce(m)
    pivots = _pivot_columns(echelon, rk)
    tb = trans.apply(b)
    for r in range(rk, m.rows):
        if not tb[r].is_zero():
            return None
    zero = m.algebra.zero()
    sol = [zero] * m.cols
    for r, p in enumerate(pivots):
        sol[p] = tb[r]
    x = QVector(sol)
    assert m.apply(x) == b
    return x


def invert(m: QMatrix) -> Optional[QMatrix]:
    """Exact inverse for full-rank square matrices, else None."""
    if not m.is_square():
        raise DimensionMismatchError("only square matrices can be inverted")
    echelon, trans, rk = row_reduce(m)
    if rk < m.rows:
        return None
    # full-rank reduced echelon is the identity, so trans * m == I by
    # construction; the right inverse property follows over a division ring
    assert echelon == QMatrix.identity(m.rows, m.algebra)
    return trans


@dataclass(frozen=True)
class SimilarityWitness:
    """Invertible basis-change pair; conjugation is P * M * Pinv."""

    P: QMatrix
    Pinv: QMatrix

    def __post_init__(self):
        ident = QMatrix.identity(self.P.rows, self.P.algebra)
        if self.P * self.Pinv != ident or self.Pinv * self.P != ident:
            raise PreconditionError("witness pair is not a mutual inverse pair")

    @classmethod
    def _trusted(cls, p: QMatrix, pinv: QMatrix) -> "SimilarityWitness":
        """Skip revalidation for pairs inverse by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "P", p)
        object.__setattr__(obj, "Pinv", pinv)
        return obj

    @classmethod
    def from_matrix(cls, p: QMatrix) -> "SimilarityWitness":
        pinv = invert(p)
        if pinv is None:
            raise PreconditionError("witness matrix is singular")
        return cls._trusted(p, pinv)

    @classmethod
    def identity(cls, n: int, algebra: AlgebraParams) -> "SimilarityWitness":
        ident = QMatrix.identity(n, algebra)
        return cls._trusted(ident, ident)

    def inverse(self) -> "SimilarityWitness":
        return SimilarityWitness._trusted(self.Pinv, self.P)

    def compose(self, first: "SimilarityWitness") -> "SimilarityWitness":
        """Witness applying `first` and then `self`: M -> self(first(M))."""
        return SimilarityWitness._trusted(self.P * first.P, first.Pinv * self.Pinv)


def conjugate_by(m: QMatrix, w: SimilarityWitness) -> QMatrix:
    """P * M * Pinv, exactly."""
    if m.rows != w.P.cols:
        raise DimensionMismatchError("witness size does not match matrix")
    return w.P * m * w.Pinv


def is_nilpotent(m: QMatrix) -> bool:
    """Whether M^n = 0 for the matrix size n (a valid bound over a division ring).

    Checked by repeated squaring: the nilindex is at most n, so M^n = 0 is
    equivalent to M^(2^k) = 0 for the least 2^k >= n.
    """
    if not m.is_square():
        raise DimensionMismatchError("nilpotency needs a square matrix")
    power = m
    steps = max(1, (m.rows - 1).bit_length())
    for _ in range(steps):
        if power.is_zero():
            return True
        power = power * power
    return power.is_zero()


def reduced_trace(m: QMatrix) -> Fraction:
    """t(sum of diagonal entries), a similarity-invariant rational."""
    if not m.is_square():
        raise DimensionMismatchError("trace needs a square matrix")
    total = m.algebra.zero()
    for e in m.diagonal_entries():
        total = total + e
    return total.reduced_trace()


def strict_split(m: QMatrix) -> tuple[QMatrix, QMatrix]:
    """Split a zero-diagonal matrix into strictly upper and strictly lower parts."""
    if not m.is_square():
        raise DimensionMismatchError("strict split needs a square matrix")
    if not m.has_zero_diagonal():
        raise PreconditionError("strict split requires a zero diagonal")
    zero = m.algebra.zero()
    upper = [[m[r, c] if c > r else zero for c in range(m.cols)] for r in range(m.rows)]
    lower = [[m[r, c] if c < r else zero for c in range(m.cols)] for r in range(m.rows)]
    return QMatrix(upper), QMatrix(lower)


def rank1_factor(m: QMatrix) -> Optional[tuple[QVector, QVector]]:
    """Outer-product factorization A[s][t] = c[s]*r[t] when rank(A) = 1.

    Normalized so that the first nonzero entry of the column c equals 1.
    """
    if rank(m) != 1:
        return None
    zero, one = m.algebra.zero(), m.algebra.one()
    s0 = next(r for r in range(m.rows) if not all(e.is_zero() for e in m.entries[r]))
    row = list(m.entries[s0])
    t0 = next(c for c in range(m.cols) if not row[c].is_zero())
    inv = row[t0].inverse()
    col = [m[s, t0] * inv for s in range(m.rows)]
    assert col[s0] == one
    c_vec, r_vec = QVector(col), QVector(row)
    assert all(
        m[s, t] == c_vec[s] * r_vec[t] for s in range(m.rows) for t in range(m.cols)
    )
    return c_vec, r_vec


def outer(c: QVector, r: QVector) -> QMatrix:
    """Rank <= 1 matrix with entries c[s]*r[t]."""
    return QMatrix([[c[s] * r[t] for t in range(r.dim)] for s in range(c.dim)])


def columns_right_independent(vectors: Iterable[QVector]) -> bool:
    vectors = list(vectors)
    if not vectors:
        return True
    return rank(QMatrix.from_columns(vectors)) == len(vectors)
