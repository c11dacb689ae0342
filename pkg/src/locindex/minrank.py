"""Exact minrank computation and optimal scalar encoder extraction.

Small instances are solved by enumerating every fitting matrix, which also
pins down a reproducible witness (first in lexicographic enumeration).
Instances whose free-entry count exceeds the enumeration budget switch to
an ascending search over column-space candidates: for k = 1, 2, ... check
whether some k-dimensional subspace contains, for every receiver, a vector
matching that receiver's fitting pattern. Both methods are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from . import fieldmath
from .errors import BudgetError
from .fieldmath import FieldSpec, GFMatrix
from .graphs import SideInfoGraph, is_acyclic

DEFAULT_ENUMERATION_BUDGET = 1 << 16


@dataclass(frozen=True)
class FittingMatrix:
    """Square matrix with unit diagonal and support confined to side information."""

    graph: SideInfoGraph
    matrix: GFMatrix

    def __post_init__(self) -> None:
        n = self.graph.n
        if self.matrix.nrows != n or self.matrix.ncols != n:
            raise ValueError("fitting matrix must be n x n")
        for i in range(n):
            if self.matrix.at(i, i) != 1:
                raise ValueError("fitting matrix needs a unit diagonal")
            for j in range(n):
                if j != i and j not in self.graph.side_info[i] and self.matrix.at(j, i) != 0:
                    raise ValueError(
                        f"entry ({j}, {i}) must be zero: {j} is not side information of {i}")

    def column(self, i: int) -> tuple[int, ...]:
        return self.matrix.col(i)


def free_positions(graph: SideInfoGraph) -> list[tuple[int, int]]:
    """Row-major list of the (row, col) entries a fitting matrix may vary."""
    return [(j, i) for j in range(graph.n) for i in range(graph.n)
            if j != i and j in graph.side_info[i]]


def _matrix_with_entries(field, graph, positions, digits) -> GFMatrix:
    n = graph.n
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for (r, c), v in zip(positions, digits):
        rows[r][c] = v
    return GFMatrix.from_rows(field, rows)


def _minrank_enumerate(graph, field, positions):
    q = field.q
    n = graph.n
    best_rank = n + 1
    best_digits = None
    base = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for digits in product(range(q), repeat=len(positions)):
        rows = [row[:] for row in base]
        for (r, c), v in zip(positions, digits):
            rows[r][c] = v
        _, pivots = fieldmath._rref(q, rows, n)
        if len(pivots) < best_rank:
            best_rank = len(pivots)
            best_digits = digits
            if best_rank == 1:
                break
    mat = _matrix_with_entries(field, graph, positions, best_digits)
    return best_rank, FittingMatrix(graph, mat)


def _rref_bases(q: int, n: int, k: int):
    """All k x n reduced-row-echelon bases over F_q, canonical order."""
    for pivots in combinations(range(n), k):
        free_cells = []
        for r in range(k):
            for c in range(pivots[r] + 1, n):
                if c not in pivots:
                    free_cells.append((r, c))
        for digits in product(range(q), repeat=len(free_cells)):
            rows = [[0] * n for _ in range(k)]
            for r in range(k):
                rows[r][pivots[r]] = 1
            for (r, c), v in zip(free_cells, digits):
                rows[r][c] = v
            yield rows


def _pattern_vector_in_span(field, basis_rows, i, known) -> tuple[int, ...] | None:
    """A vector v in the row span with v_i = 1 and v_j = 0 for j outside known+{i}."""
    n = len(basis_rows[0])
    k = len(basis_rows)
    q = field.q
    constrained = [c for c in range(n) if c == i or c not in known]
    aug = [[basis_rows[r][c] for r in range(k)] + [1 if c == i else 0]
           for c in constrained]
    work, pivots = fieldmath._rref(q, aug, k + 1)
    if pivots and pivots[-1] == k:
        return None
    y = [0] * k
    for prow, col in enumerate(pivots):
        y[col] = work[prow][k]
    return tuple(sum(y[r] * basis_rows[r][c] for r in range(k)) % q for c in range(n))


def _minrank_subspace(graph, field):
    n = graph.n
    for k in range(1, n + 1):
        for basis_rows in _rref_bases(field.q, n, k):
            cols = []
            for i in range(n):
                v = _pattern_vector_in_span(field, basis_rows, i, graph.side_info[i])
                if v is None:
                    break
                cols.append(v)
            else:
                mat = GFMatrix.from_cols(field, cols, nrows=n)
                return k, FittingMatrix(graph, mat)
    raise AssertionError("identity fitting matrix guarantees feasibility at k = n")


def minrank(graph: SideInfoGraph, field: FieldSpec,
            enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET):
    """Exact minimum rank over all matrices fitting the graph.

    Returns (value, witness). Acyclic graphs short-circuit to n, since an
    acyclic fitting pattern is unit-triangular under a topological order.
    Results are memoized; graphs and fields are immutable.
    """
    return _minrank_cached(graph, field, enumeration_budget)


@lru_cache(maxsize=4096)
def _minrank_cached(graph: SideInfoGraph, field: FieldSpec, enumeration_budget: int):
    positions = free_positions(graph)
    if is_acyclic(graph):
        zero = _matrix_with_entries(field, graph, positions, (0,) * len(positions))
        return graph.n, FittingMatrix(graph, zero)
    if field.q ** len(positions) <= enumeration_budget:
        return _minrank_enumerate(graph, field, positions)
    return _minrank_subspace(graph, field)


def optimal_scalar_encoder(fitting: FittingMatrix) -> GFMatrix:
    """First maximal independent column subset of the fitting matrix."""
    mat = fitting.matrix
    chosen: list[int] = []
    current_rank = 0
    for j in range(mat.ncols):
        trial = chosen + [j]
        if fieldmath.rank(mat.take_columns(trial)) > current_rank:
            chosen = trial
            current_rank += 1
    return mat.take_columns(chosen)
