"""Exact arithmetic over prime fields and the linear algebra built on it.

Matrices are immutable and entries are plain ints reduced mod q. Every
routine whose answer is not unique (solving underdetermined systems,
choosing minimum-weight solutions) breaks ties lexicographically, so
results are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product


class UnreachableTargetError(ValueError):
    """The target vector is not in the column space of the matrix."""


class WeightCapExceededError(ValueError):
    """No solution exists within the requested Hamming weight cap."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class FieldSpec:
    """Prime field of order q; elements are ints in [0, q)."""

    q: int

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"field order must be prime, got {self.q}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, self.q - 2, self.q)

    def elements(self) -> range:
        return range(self.q)


@dataclass(frozen=True)
class GFMatrix:
    """Immutable matrix over a prime field."""

    field: FieldSpec
    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        q = self.field.q
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
            for x in row:
                if not (0 <= x < q):
                    raise ValueError(f"entry {x} not reduced mod {q}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "GFMatrix":
        rows = tuple(tuple(int(x) % field.q for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_cols(cls, field: FieldSpec, cols, nrows: int | None = None) -> "GFMatrix":
        cols = [tuple(int(x) % field.q for x in col) for col in cols]
        if nrows is None:
            if not cols:
                raise ValueError("nrows required for a matrix with no columns")
            nrows = len(cols[0])
        rows = tuple(tuple(col[r] for col in cols) for r in range(nrows))
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GFMatrix":
        return cls(field, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "GFMatrix":
        return cls(field, nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    def at(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.field, self.ncols, self.nrows,
                        tuple(self.col(j) for j in range(self.ncols)))

    def mul(self, other: "GFMatrix") -> "GFMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        q = self.field.q
        rows = []
        for i in range(self.nrows):
            a = self.rows[i]
            rows.append(tuple(
                sum(a[k] * other.rows[k][j] for k in range(self.ncols)) % q
                for j in range(other.ncols)))
        return GFMatrix(self.field, self.nrows, other.ncols, tuple(rows))

    def hstack(self, other: "GFMatrix") -> "GFMatrix":
        if self.field != other.field or self.nrows != other.nrows:
            raise ValueError("dimension mismatch in hstack")
        return GFMatrix(self.field, self.nrows, self.ncols + other.ncols,
                        tuple(a + b for a, b in zip(self.rows, other.rows)))

    def take_columns(self, indices) -> "GFMatrix":
        indices = list(indices)
        return GFMatrix(self.field, self.nrows, len(indices),
                        tuple(tuple(row[j] for j in indices) for row in self.rows))

    def take_rows(self, indices) -> "GFMatrix":
        indices = list(indices)
        return GFMatrix(self.field, len(indices), self.ncols,
                        tuple(self.rows[i] for i in indices))

    def vec_mul(self, vec) -> tuple[int, ...]:
        """Row vector times this matrix: vec (1 x nrows) -> (1 x ncols)."""
        vec = list(vec)
        if len(vec) != self.nrows:
            raise ValueError("dimension mismatch in vec_mul")
        q = self.field.q
        return tuple(sum(vec[i] * self.rows[i][j] for i in range(self.nrows)) % q
                     for j in range(self.ncols))


def _rref(q: int, rows, ncols: int):
    """Reduced row echelon form of a list of row tuples mod prime q.

    Returns (work, pivots) where work is a list of lists and pivots the
    pivot column indices in ascending order.
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    prow = 0
    nrows = len(work)
    for col in range(ncols):
        if prow == nrows:
            break
        piv = None
        for r in range(prow, nrows):
            if work[r][col] % q:
                piv = r
                break
        if piv is None:
            continue
        work[prow], work[piv] = work[piv], work[prow]
        inv = pow(work[prow][col], q - 2, q)
        if inv != 1:
            work[prow] = [(x * inv) % q for x in work[prow]]
        base = work[prow]
        for r in range(nrows):
            if r != prow and work[r][col]:
                f = work[r][col]
                work[r] = [(a - f * b) % q for a, b in zip(work[r], base)]
        pivots.append(col)
        prow += 1
    return work, pivots


def rank(matrix: GFMatrix) -> int:
    """Rank over F_q via row reduction."""
    _, pivots = _rref(matrix.field.q, matrix.rows, matrix.ncols)
    return len(pivots)


def solve(matrix: GFMatrix, target) -> tuple[int, ...] | None:
    """One solution d of matrix . d^T = target^T, or None if inconsistent.

    Free variables are fixed to zero, so the returned solution is the
    lexicographically smallest free-variable assignment.
    """
    target = [int(x) % matrix.field.q for x in target]
    if len(target) != matrix.nrows:
        raise ValueError("target length must equal the matrix row count")
    q = matrix.field.q
    aug = [row + (t,) for row, t in zip(matrix.rows, target)]
    work, pivots = _rref(q, aug, matrix.ncols + 1)
    if pivots and pivots[-1] == matrix.ncols:
        return None
    x = [0] * matrix.ncols
    for prow, col in enumerate(pivots):
        x[col] = work[prow][matrix.ncols]
    return tuple(x)


def nullspace(matrix: GFMatrix) -> tuple[tuple[int, ...], ...]:
    """Basis of {d : matrix . d^T = 0}, one vector per free column."""
    q = matrix.field.q
    work, pivots = _rref(q, matrix.rows, matrix.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.ncols):
        if free in pivot_set:
            continue
        vec = [0] * matrix.ncols
        vec[free] = 1
        for prow, col in enumerate(pivots):
            vec[col] = (-work[prow][free]) % q
        basis.append(tuple(vec))
    return tuple(basis)


def column_space_contains(outer: GFMatrix, inner: GFMatrix) -> bool:
    """True iff every column of inner lies in the column space of outer."""
    if outer.nrows != inner.nrows:
        raise ValueError("row count mismatch")
    return rank(outer.hstack(inner)) == rank(outer)


_NULLITY_ENUM_LIMIT = 4096


def min_weight_solution(matrix: GFMatrix, target, wt_cap: int | None = None) -> tuple[int, ...]:
    """Minimum Hamming weight d with matrix . d^T = target^T.

    Searches supports of increasing size; among equal-weight solutions the
    lexicographically smallest support wins, then the smallest coefficient
    tuple on that support. Exponential in the weight, fine at desk scale.
    """
    q = matrix.field.q
    target = [int(x) % q for x in target]
    if len(target) != matrix.nrows:
        raise ValueError("target length must equal the matrix row count")
    if solve(matrix, target) is None:
        raise UnreachableTargetError("target not in column space")
    cap = matrix.ncols if wt_cap is None else wt_cap
    if cap > matrix.ncols:
        raise ValueError("weight cap exceeds the number of columns")
    if all(t == 0 for t in target):
        return (0,) * matrix.ncols
    for w in range(1, cap + 1):
        for support in combinations(range(matrix.ncols), w):
            sub = matrix.take_columns(support)
            particular = solve(sub, target)
            if particular is None:
                continue
            kernel = nullspace(sub)
            if kernel:
                if q ** len(kernel) > _NULLITY_ENUM_LIMIT:
                    raise RuntimeError("solution family too large to enumerate")
                best = None
                for coeffs in product(range(q), repeat=len(kernel)):
                    cand = list(particular)
                    for c, vec in zip(coeffs, kernel):
                        if c:
                            cand = [(a + c * b) % q for a, b in zip(cand, vec)]
                    cand = tuple(cand)
                    if best is None or cand < best:
                        best = cand
                particular = best
            # a zero coefficient would mean a smaller support solved earlier
            assert all(x != 0 for x in particular)
            d = [0] * matrix.ncols
            for pos, val in zip(support, particular):
                d[pos] = val
            return tuple(d)
    raise WeightCapExceededError(f"no solution of weight <= {cap}")


def support(vec) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(vec) if x != 0)
