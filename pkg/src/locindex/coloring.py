"""Exact fractional chromatic number and the unit-locality coloring code.

The fractional chromatic number is computed from the independent-set cover
LP, solved with exact rational pivoting, and converted into an a:b coloring
witness. The code built from a coloring sends one sum per color; each
receiver reads exactly the b symbols of its own colors, so its locality
is 1 by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import ratlp
from .codes import Decoder, LinearIndexCode
from .errors import BudgetError
from .fieldmath import FieldSpec, GFMatrix
from .graphs import SideInfoGraph, UndirectedGraph, interference_graph

SIZE_LIMIT = 12


@dataclass(frozen=True)
class ABColoring:
    """b colors per vertex out of a total palette of `total` colors."""

    total: int
    per_vertex: int
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.per_vertex < 1 or self.total < 1:
            raise ValueError("coloring parameters must be positive")
        for cls in self.classes:
            if len(set(cls)) != self.per_vertex:
                raise ValueError("every vertex needs exactly per_vertex distinct colors")
            if any(not 0 <= c < self.total for c in cls):
                raise ValueError("color out of range")
            if list(cls) != sorted(cls):
                raise ValueError("color sets must be sorted")

    def ratio(self) -> Fraction:
        return Fraction(self.total, self.per_vertex)


def coloring_is_valid(coloring: ABColoring, graph: UndirectedGraph) -> bool:
    if len(coloring.classes) != graph.n:
        return False
    for (a, b) in graph.edges:
        if set(coloring.classes[a]) & set(coloring.classes[b]):
            return False
    return True


def maximal_independent_sets(graph: UndirectedGraph) -> list[tuple[int, ...]]:
    """All maximal independent sets, sorted lexicographically.

    Bron-Kerbosch with pivoting on the complement adjacency.
    """
    n = graph.n
    comp = [set(range(n)) - {v} - graph.neighbors(v) for v in range(n)]
    found: list[tuple[int, ...]] = []

    def expand(chosen: set[int], candidates: set[int], excluded: set[int]) -> None:
        if not candidates and not excluded:
            found.append(tuple(sorted(chosen)))
            return
        pivot = max(candidates | excluded, key=lambda u: len(candidates & comp[u]))
        for v in sorted(candidates - comp[pivot]):
            expand(chosen | {v}, candidates & comp[v], excluded & comp[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand(set(), set(range(n)), set())
    return sorted(found)


def fractional_chromatic(graph: UndirectedGraph,
                         limit: int = SIZE_LIMIT) -> tuple[Fraction, ABColoring]:
    """Exact fractional chromatic number with an a:b coloring witness."""
    if graph.n > limit:
        raise BudgetError(f"graph has {graph.n} vertices, limit is {limit}")
    sets = maximal_independent_sets(graph)
    # cover LP: min sum y_I  s.t.  sum_{I containing v} y_I >= 1, y >= 0
    objective = [Fraction(1)] * len(sets)
    ub_rows = []
    ub_rhs = []
    for v in range(graph.n):
        ub_rows.append([Fraction(-1) if v in s else Fraction(0) for s in sets])
        ub_rhs.append(Fraction(-1))
    value, weights = ratlp.solve_lp(objective, ub_rows=ub_rows, ub_rhs=ub_rhs)
    per_vertex = math.lcm(*(w.denominator for w in weights if w > 0))
    counts = [int(w * per_vertex) for w in weights]
    # hand colors to the sets in enumeration order
    assigned: list[list[int]] = [[] for _ in range(graph.n)]
    color = 0
    for s, count in zip(sets, counts):
        for _ in range(count):
            for v in s:
                assigned[v].append(color)
            color += 1
    # over-covered vertices keep only their first per_vertex colors
    kept = [sorted(c[:per_vertex]) for c in assigned]
    used = sorted({c for cls in kept for c in cls})
    renumber = {c: k for k, c in enumerate(used)}
    classes = tuple(tuple(renumber[c] for c in cls) for cls in kept)
    witness = ABColoring(len(used), per_vertex, classes)
    assert witness.ratio() == value, "coloring witness disagrees with the LP optimum"
    return value, witness


def min_colors_fixed_b(graph: UndirectedGraph, b: int, limit: int = SIZE_LIMIT) -> int:
    """Smallest total palette size admitting a coloring with b colors per vertex."""
    if b < 1:
        raise ValueError("b must be positive")
    if graph.n > limit:
        raise BudgetError(f"graph has {graph.n} vertices, limit is {limit}")
    chi_f, _ = fractional_chromatic(graph, limit)
    sets = maximal_independent_sets(graph)
    lower = math.ceil(b * chi_f)
    membership = [frozenset(s) for s in sets]
    # b copies of one maximal set per vertex always work, so this bound is achievable
    best = [b * graph.n]

    def search(deficits: list[int], count: int) -> None:
        worst = max(deficits)
        if worst == 0:
            best[0] = min(best[0], count)
            return
        # each additional set lowers any one deficit by at most 1
        if count + worst >= best[0]:
            return
        needy = deficits.index(worst)
        for k in range(len(sets)):
            if needy in membership[k]:
                nxt = list(deficits)
                for v in membership[k]:
                    if nxt[v] > 0:
                        nxt[v] -= 1
                search(nxt, count + 1)

    search([b] * graph.n, 0)
    result = best[0]
    assert result >= lower
    return result


def fractional_coloring_code(graph: SideInfoGraph, coloring: ABColoring,
                             field: FieldSpec) -> LinearIndexCode:
    """Code sending, per color, the sum of the symbols of vertices holding it.

    Message length is b and codeword length the number of used colors, so
    with an optimal coloring the broadcast rate equals the fractional
    chromatic number; every receiver queries only its own b colors.
    """
    conflict = interference_graph(graph)
    if len(coloring.classes) != graph.n or not coloring_is_valid(coloring, conflict):
        raise ValueError("invalid coloring: classes overlap on an interference edge")
    m = coloring.per_vertex
    used = sorted({c for cls in coloring.classes for c in cls})
    renumber = {c: k for k, c in enumerate(used)}
    length = len(used)
    rows = [[0] * length for _ in range(m * graph.n)]
    for i, cls in enumerate(coloring.classes):
        for s, color in enumerate(cls):
            rows[i * m + s][renumber[color]] = 1
    queries = tuple(tuple(renumber[c] for c in cls) for cls in coloring.classes)
    decoders = []
    for i, cls in enumerate(coloring.classes):
        identity = GFMatrix.identity(field, m)
        known = sorted(graph.side_info[i])
        side = [[0] * m for _ in range(m * len(known))]
        for w, j in enumerate(known):
            for sp, color in enumerate(coloring.classes[j]):
                if color in cls:
                    side[w * m + sp][cls.index(color)] = field.neg(1)
        decoders.append(Decoder(identity, GFMatrix.from_rows(field, side, ncols=m)))
    encoder = GFMatrix.from_rows(field, rows, ncols=length)
    provenance = f"fractional-coloring {coloring.total}:{coloring.per_vertex}"
    return LinearIndexCode(field, graph.n, m, length, encoder, queries,
                           tuple(decoders), provenance)
