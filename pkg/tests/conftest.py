"""Shared builders and brute-force oracles for the test suite."""

from __future__ import annotations

import json
import random
from itertools import combinations, product

from locindex import FieldSpec, GFMatrix, SideInfoGraph, parse_graph


def graph_of(n: int, side_info) -> SideInfoGraph:
    """1-indexed side information lists, mirroring the JSON format."""
    return parse_graph(json.dumps({"n": n, "side_info": [sorted(s) for s in side_info]}))


def directed_cycle(n: int) -> SideInfoGraph:
    return graph_of(n, [[(i + 1) % n + 1] for i in range(n)])


def edgeless(n: int) -> SideInfoGraph:
    return graph_of(n, [[] for _ in range(n)])


def bidirected_complete(n: int) -> SideInfoGraph:
    return graph_of(n, [[j + 1 for j in range(n) if j != i] for i in range(n)])


def circulant(n: int, offsets) -> SideInfoGraph:
    return graph_of(n, [sorted((i + d) % n + 1 for d in offsets) for i in range(n)])


def undirected_cycle_side_info(n: int) -> SideInfoGraph:
    return circulant(n, (1, n - 1))


def random_graph(rng: random.Random, n: int, p: float) -> SideInfoGraph:
    side = [[j + 1 for j in range(n) if j != i and rng.random() < p] for i in range(n)]
    return graph_of(n, side)


def gf(q: int, rows) -> GFMatrix:
    return GFMatrix.from_rows(FieldSpec(q), rows)


# ---------------------------------------------------------------------------
# independent oracles


def columns_independent(matrix: GFMatrix, cols) -> bool:
    """No nontrivial vanishing combination, checked by full enumeration."""
    q = matrix.field.q
    cols = list(cols)
    for coeffs in product(range(q), repeat=len(cols)):
        if not any(coeffs):
            continue
        if all(sum(c * matrix.at(r, j) for c, j in zip(coeffs, cols)) % q == 0
               for r in range(matrix.nrows)):
            return False
    return True


def brute_force_rank(matrix: GFMatrix) -> int:
    """Largest independent column subset, by enumeration."""
    best = 0
    for size in range(matrix.ncols, 0, -1):
        for cols in combinations(range(matrix.ncols), size):
            if columns_independent(matrix, cols):
                return size
    return best


def brute_force_min_weight(matrix: GFMatrix, target) -> int | None:
    """Minimum weight of d with matrix . d^T = target^T over all q^cols vectors."""
    q = matrix.field.q
    best = None
    for d in product(range(q), repeat=matrix.ncols):
        if all(sum(x * matrix.at(r, j) for j, x in enumerate(d)) % q == t % q
               for r, t in enumerate(target)):
            weight = sum(1 for x in d if x)
            if best is None or weight < best:
                best = weight
    return best


def brute_force_minrank(graph: SideInfoGraph, q: int) -> int:
    """Minimum rank over all fitting matrices, by direct enumeration."""
    field = FieldSpec(q)
    free = [(j, i) for j in range(graph.n) for i in range(graph.n)
            if j != i and j in graph.side_info[i]]
    best = graph.n
    for digits in product(range(q), repeat=len(free)):
        rows = [[1 if r == c else 0 for c in range(graph.n)] for r in range(graph.n)]
        for (r, c), v in zip(free, digits):
            rows[r][c] = v
        mat = GFMatrix.from_rows(field, rows)
        best = min(best, brute_force_rank(mat))
    return best
