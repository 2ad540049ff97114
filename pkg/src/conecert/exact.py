"""Exact scalars and dense linear algebra over Q and Q(sqrt 2).

Everything in this package is computed without rounding: scalars are
`fractions.Fraction` (aliased `Rat`), vectors are tuples of fractions and
matrices are immutable row-major grids of fractions.  Rationals serialize
as "p/q" strings (or "p" when the denominator is 1).

The quadratic extension Q(sqrt 2) exists solely for the qubit demo, which
needs to certify that a specific algebraic number is a matrix eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rat = Fraction

Vec = tuple[Fraction, ...]


def rat(x: int | str | Fraction) -> Fraction:
    """Parse a rational from an int, a Fraction, or a "p/q" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when q = 1."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(entries) -> Vec:
    return tuple(rat(e) for e in entries)


def vadd(u: Vec, v: Vec) -> Vec:
    _check_same_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    _check_same_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def vdot(u: Vec, v: Vec) -> Fraction:
    _check_same_len(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(i: int, n: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def _check_same_len(u, v) -> None:
    if len(u) != len(v):
        raise ValueError(f"vector length mismatch: {len(u)} vs {len(v)}")


def primitive(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive rational so its entries
    become coprime integers.  The direction (sign pattern) is preserved, so
    this is the canonical representative of the ray spanned by v."""
    fracs = [rat(x) for x in v]
    if all(f == 0 for f in fracs):
        raise ValueError("cannot normalize the zero vector")
    denom_lcm = 1
    for f in fracs:
        denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for k in ints:
        g = gcd(g, k)
    return tuple(k // g for k in ints)


class Mat:
    """Immutable dense rational matrix with explicit dimensions.

    Dimension mismatches raise at construction or at the offending
    operation, never silently. Entries are coerced through `rat`.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(rat(x) for x in r) for r in rows)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0:
            raise ValueError("matrix needs at least one column")
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows in matrix literal")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Mat is immutable")

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(m: int, n: int) -> "Mat":
        return Mat([[0] * n for _ in range(m)])

    @staticmethod
    def from_cols(cols) -> "Mat":
        cols = [tuple(rat(x) for x in c) for c in cols]
        return Mat(list(zip(*cols)))

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat([vadd(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat([vsub(a, b) for a, b in zip(self.rows, other.rows)])

    def scale(self, c) -> "Mat":
        c = rat(c)
        return Mat([vscale(c, r) for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.transpose().rows
            return Mat([[vdot(r, c) for c in cols] for r in self.rows])
        other = vec(other)
        if self.ncols != len(other):
            raise ValueError(f"cannot apply {self.shape} to vector of length {len(other)}")
        return tuple(vdot(r, other) for r in self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def _check_same_shape(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in r) for r in self.rows)
        return f"Mat[{body}]"


def _echelonize(rows: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    m, n = len(rows), len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank(A: Mat) -> int:
    rows = [list(r) for r in A.rows]
    return len(_echelonize(rows))


def solve_linear(A: Mat, b: Vec) -> Vec | None:
    """One exact solution of A x = b (free variables set to 0), or None
    when the system is inconsistent."""
    b = vec(b)
    if A.nrows != len(b):
        raise ValueError(f"matrix has {A.nrows} rows but rhs has length {len(b)}")
    aug = [list(r) + [bi] for r, bi in zip(A.rows, b)]
    pivots = _echelonize(aug)
    n = A.ncols
    if n in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return tuple(x)


def kernel_basis(A: Mat) -> list[Vec]:
    """Basis of the null space of A (deterministic: one vector per free
    column of the reduced echelon form)."""
    rows = [list(r) for r in A.rows]
    pivots = _echelonize(rows)
    n = A.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def complete_basis(B: list[Vec], ambient: int) -> list[Vec]:
    """Extend the linearly independent family B to a basis of R^ambient by
    greedily appending standard basis vectors.  Returns only the appended
    vectors.  Raises ValueError if B is dependent."""
    B = [vec(v) for v in B]
    if any(len(v) != ambient for v in B):
        raise ValueError("basis vectors do not live in the ambient space")
    if B and rank(Mat(B)) != len(B):
        raise ValueError("input vectors are linearly dependent")
    current = list(B)
    added: list[Vec] = []
    r = len(current)
    for i in range(ambient):
        if r == ambient:
            break
        cand = unit_vec(i, ambient)
        if rank(Mat(current + [cand])) > r:
            current.append(cand)
            added.append(cand)
            r += 1
    if r != ambient:  # pragma: no cover - unreachable for independent B
        raise ValueError("failed to complete basis")
    return added


def inverse(A: Mat) -> Mat:
    if A.nrows != A.ncols:
        raise ValueError("only square matrices invert")
    n = A.nrows
    aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, r in enumerate(A.rows)]
    pivots = _echelonize(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat([row[n:] for row in aug])


def det(A: Mat) -> Fraction:
    """Determinant by Bareiss fraction-free elimination."""
    if A.nrows != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = A.nrows
    m = [list(r) for r in A.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ----------------------------------------------------------------------------
# The quadratic extension Q(sqrt 2)


@dataclass(frozen=True)
class QSqrt2:
    """Element a + b*sqrt(2) with rational a, b; arithmetic is exact."""

    a: Fraction
    b: Fraction

    @staticmethod
    def of(a, b=0) -> "QSqrt2":
        return QSqrt2(rat(a), rat(b))

    def __add__(self, o: "QSqrt2") -> "QSqrt2":
        return QSqrt2(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "QSqrt2") -> "QSqrt2":
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, o: "QSqrt2") -> "QSqrt2":
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    def __truediv__(self, o: "QSqrt2") -> "QSqrt2":
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        return self * QSqrt2(o.a / n, -o.b / n)

    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 2 b^2 (zero iff the element is zero)."""
        return self.a * self.a - 2 * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self) -> str:
        return f"({rat_str(self.a)} + {rat_str(self.b)}*sqrt2)"


Q2_ZERO = QSqrt2.of(0)
Q2_ONE = QSqrt2.of(1)


def qsqrt2_det(rows: list[list[QSqrt2]]) -> QSqrt2:
    """Exact determinant over Q(sqrt 2) by Bareiss fraction-free elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in rows]
    sign = 1
    prev = Q2_ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if p is None:
                return Q2_ZERO
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Q2_ZERO
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out
