"""Constructive schemes: acyclic-subgraph covers, cyclic-shift balancing,
and the separation scheme through covering codes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from . import fieldmath
from .codes import LinearIndexCode, scalar_code, time_share
from .errors import BudgetError, SchemeError
from .fieldmath import FieldSpec, GFMatrix
from .graphs import (SideInfoGraph, girth_directed, has_cyclic_automorphism,
                     induced_subgraph, topological_order)
from .minrank import FittingMatrix, minrank, optimal_scalar_encoder


@dataclass(frozen=True)
class AISCover:
    """Family of vertex subsets, each inducing an acyclic subgraph."""

    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.subsets:
            raise ValueError("cover needs at least one subset")
        for s in self.subsets:
            if not s or list(s) != sorted(set(s)):
                raise ValueError("cover subsets must be nonempty, sorted, duplicate-free")

    def fold(self) -> int:
        counts: dict[int, int] = {}
        for s in self.subsets:
            for v in s:
                counts[v] = counts.get(v, 0) + 1
        return min(counts.values())


def validate_ais_cover(graph: SideInfoGraph, cover: AISCover) -> int:
    """Check the cover against the graph; returns the fold count Q."""
    touched = set()
    for s in cover.subsets:
        for v in s:
            if not 0 <= v < graph.n:
                raise SchemeError(f"cover vertex {v} out of range")
        touched.update(s)
        sub, _ = induced_subgraph(graph, s)
        result = topological_order(sub)
        if result.order is None:
            raise SchemeError(f"cover subset {tuple(v + 1 for v in s)} induces a cycle")
    if touched != set(range(graph.n)):
        raise SchemeError("cover does not touch every vertex")
    return cover.fold()


def t_subset_cover(graph: SideInfoGraph, t: int) -> AISCover:
    """All size-t subsets; valid whenever the graph has no cycle of length <= t."""
    if t < 1 or t > graph.n:
        raise SchemeError(f"subset size {t} out of range for n = {graph.n}")
    girth = girth_directed(graph)
    if girth <= t:
        raise SchemeError(f"graph has a directed cycle of length {girth} <= t = {t}")
    return AISCover(tuple(combinations(range(graph.n), t)))


def reorder_for_subset(encoder: GFMatrix, fitting: FittingMatrix, subset) -> GFMatrix:
    """Equivalent encoder whose first columns are the fitting columns of the
    subset in topological order, giving those receivers weight-1 decoding."""
    graph = fitting.graph
    subset = tuple(sorted(set(subset)))
    sub, vmap = induced_subgraph(graph, subset)
    topo = topological_order(sub)
    if topo.order is None:
        raise SchemeError("subset induces a cycle, cannot reorder for it")
    cols = [fitting.column(vmap[u]) for u in topo.order]
    lead = GFMatrix.from_cols(encoder.field, cols, nrows=graph.n)
    got = fieldmath.rank(lead)
    assert got == len(subset), "acyclic subset columns must be independent"
    chosen = list(cols)
    current = got
    target = fieldmath.rank(encoder)
    for j in range(encoder.ncols):
        if current == target and len(chosen) == encoder.ncols:
            break
        trial = chosen + [encoder.col(j)]
        mat = GFMatrix.from_cols(encoder.field, trial, nrows=graph.n)
        if fieldmath.rank(mat) > current:
            chosen = trial
            current += 1
    while len(chosen) < encoder.ncols:
        chosen.append(encoder.col(0))
    out = GFMatrix.from_cols(encoder.field, chosen, nrows=graph.n)
    if not (fieldmath.column_space_contains(out, encoder)
            and fieldmath.column_space_contains(encoder, out)):
        raise SchemeError("could not rebuild an equivalent encoder for the subset")
    return out


def ais_cover_code(graph: SideInfoGraph, cover: AISCover, encoder: GFMatrix,
                   fitting: FittingMatrix) -> LinearIndexCode:
    """Vector code time-sharing one reordered scalar instance per cover
    subset: rate stays at the scalar length, message length is the number
    of subsets, and receivers pay weight 1 in every subset containing them."""
    fold = validate_ais_cover(graph, cover)
    if encoder.nrows != graph.n:
        raise SchemeError("encoder must have one row per receiver")
    if fieldmath.rank(encoder) != encoder.ncols:
        raise SchemeError("encoder columns must be independent")
    if not fieldmath.column_space_contains(encoder, fitting.matrix):
        raise SchemeError("encoder column space does not contain the fitting matrix")
    parts = []
    for s in cover.subsets:
        reordered = reorder_for_subset(encoder, fitting, s)
        parts.append((scalar_code(reordered, fitting, provenance="ais-part"), 1))
    name = f"ais M={len(cover.subsets)} Q={fold} len={encoder.ncols}"
    return time_share(graph, parts, provenance=name)


def cyclic_balanced_code(graph: SideInfoGraph, field: FieldSpec) -> LinearIndexCode:
    """For graphs invariant under i -> i+1 (mod n): time-share the n cyclic
    shifts of one optimal scalar code; every receiver gets weight-1 decoding
    in minrank-many of the shifts."""
    if not has_cyclic_automorphism(graph):
        raise SchemeError("the cyclic shift is not an automorphism of this graph")
    n = graph.n
    value, fitting = minrank(graph, field)
    base = optimal_scalar_encoder(fitting)
    parts = []
    for shift in range(n):
        # conjugating the fitting matrix by the shift keeps it fitting
        mat = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                mat[(a + shift) % n][(b + shift) % n] = fitting.matrix.at(a, b)
        shifted_fit = FittingMatrix(graph, GFMatrix.from_rows(field, mat))
        rows = [base.row((a - shift) % n) for a in range(n)]
        shifted_enc = GFMatrix.from_rows(field, rows, ncols=base.ncols)
        parts.append((scalar_code(shifted_enc, shifted_fit, provenance="cyclic-part"), 1))
    return time_share(graph, parts, provenance=f"cyclic-balanced len={value}")


def _sphere_covering_lower_bound(q: int, codim: int, radius: int) -> int:
    target = q ** codim
    n = 1
    while True:
        total = sum(math.comb(n, j) * (q - 1) ** j for j in range(radius + 1))
        if total >= target:
            return n
        n += 1


def _int_to_vector(value: int, q: int, codim: int) -> tuple[int, ...]:
    return tuple((value // q ** (codim - 1 - t)) % q for t in range(codim))


def _covers_all(columns, q: int, codim: int, radius: int) -> bool:
    reached = {(0,) * codim}
    target = q ** codim
    for k in range(1, radius + 1):
        for subset in combinations(columns, k):
            for coeffs in product(range(1, q), repeat=k):
                vec = [0] * codim
                for col, c in zip(subset, coeffs):
                    for t in range(codim):
                        vec[t] = (vec[t] + c * col[t]) % q
                reached.add(tuple(vec))
        if len(reached) == target:
            return True
    return len(reached) == target


def find_covering_code(field: FieldSpec, codim: int, radius: int,
                       subset_budget: int = 2_000_000) -> tuple[int, GFMatrix]:
    """Smallest blocklength n such that some codim x n parity matrix expresses
    every syndrome as a combination of at most `radius` columns.

    Brute force over sorted distinct nonzero columns, n ascending from the
    sphere-covering bound. Radius 1 and radius >= codim are closed forms.
    """
    if codim < 1 or radius < 1:
        raise ValueError("codim and radius must be positive")
    q = field.q
    if q ** codim > 1 << 16:
        raise BudgetError("syndrome space too large for covering-code search")
    if radius >= codim:
        # any syndrome is a combination of codim unit columns
        return codim, GFMatrix.identity(field, codim)
    if radius == 1:
        # one column per projective direction, first coordinate normalized
        cols = []
        for value in range(1, q ** codim):
            vec = _int_to_vector(value, q, codim)
            lead = next(x for x in vec if x)
            if lead == 1:
                cols.append(vec)
        n = -(-(q ** codim - 1) // (q - 1))
        assert len(cols) == n
        return n, GFMatrix.from_cols(field, cols, nrows=codim)
    candidates = [_int_to_vector(v, q, codim) for v in range(1, q ** codim)]
    n = max(codim, _sphere_covering_lower_bound(q, codim, radius))
    while n <= len(candidates):
        if math.comb(len(candidates), n) > subset_budget:
            raise BudgetError("covering-code column search budget exceeded")
        for cols in combinations(candidates, n):
            if _covers_all(cols, q, codim, radius):
                return n, GFMatrix.from_cols(field, cols, nrows=codim)
        n += 1
    raise BudgetError("no covering code found within the candidate range")


def separation_code(graph: SideInfoGraph, field: FieldSpec, radius: int,
                    subset_budget: int = 2_000_000) -> LinearIndexCode:
    """Optimal scalar encoder composed with a covering-code parity matrix:
    every fitting column becomes a combination of at most `radius` encoder
    columns, capping each receiver's query count at `radius`."""
    value, fitting = minrank(graph, field)
    base = optimal_scalar_encoder(fitting)
    n, parity = find_covering_code(field, value, radius, subset_budget=subset_budget)
    encoder = base.mul(parity)
    return scalar_code(encoder, fitting, wt_cap=radius,
                       provenance=f"separation radius={radius} cover-len={n}")
