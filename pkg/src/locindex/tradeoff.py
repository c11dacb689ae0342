"""Achievable locality/rate points, their convex envelope, and lower bounds.

Every achievable point is backed by a concrete verified code. The upper
curve is the lower convex envelope of the points, clipped to be
non-increasing and extended flat at the best known rate. The lower curve
combines the maximum-acyclic-induced-subgraph bound, the fractional
chromatic number pinned at locality 1, and, for the directed 3-cycle, its
exact closed-form trade-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import coloring, covering, schemes
from .codes import LinearIndexCode, code_metrics, scalar_code, verify_code
from .errors import BudgetError, SchemeError, ToolkitError
from .fieldmath import FieldSpec
from .graphs import (SideInfoGraph, girth_directed, has_cyclic_automorphism,
                     interference_graph, mais_size)
from .minrank import minrank, optimal_scalar_encoder


@dataclass(frozen=True)
class TradeoffPoint:
    locality: Fraction
    beta: Fraction
    provenance: str
    code: LinearIndexCode


@dataclass(frozen=True)
class UpperEnvelope:
    """Piecewise-linear convex non-increasing upper bound on the optimal rate."""

    breakpoints: tuple[tuple[Fraction, Fraction, str], ...]

    def value(self, r) -> Fraction:
        r = Fraction(r)
        pts = self.breakpoints
        if r < pts[0][0]:
            raise ValueError(f"no achievable point at locality {r}")
        if r >= pts[-1][0]:
            return pts[-1][1]
        for (r0, b0, _), (r1, b1, _) in zip(pts, pts[1:]):
            if r0 <= r <= r1:
                return b0 + (b1 - b0) * (r - r0) / (r1 - r0)
        raise AssertionError("unreachable")

    def witness(self, r) -> str:
        r = Fraction(r)
        pts = self.breakpoints
        if r >= pts[-1][0]:
            return pts[-1][2]
        for (r0, _, p0), (r1, _, p1) in zip(pts, pts[1:]):
            if r0 <= r <= r1:
                return p0 if r == r0 else f"{p0} + {p1}"
        return pts[0][2]


@dataclass(frozen=True)
class LowerBoundCurve:
    mais: int
    chi_f: Fraction
    exact_three_cycle: bool

    def value(self, r) -> Fraction:
        r = Fraction(r)
        if r < 1:
            raise ValueError("locality below 1 is unachievable")
        best = Fraction(self.mais)
        if r == 1:
            best = max(best, self.chi_f)
        if self.exact_three_cycle:
            best = max(best, three_cycle_beta(r))
        return best

    def describe(self, r) -> str:
        r = Fraction(r)
        parts = [f"mais={self.mais}"]
        if r == 1:
            parts.append(f"chi_f={self.chi_f}")
        if self.exact_three_cycle:
            parts.append("three-cycle-closed-form")
        return " ".join(parts)


def three_cycle_beta(r) -> Fraction:
    """Exact optimal rate of the directed 3-cycle at locality r."""
    r = Fraction(r)
    if r < 1:
        raise ValueError("locality below 1 is unachievable")
    return max(6 - 3 * r, Fraction(2))


def is_directed_three_cycle(graph: SideInfoGraph) -> bool:
    if graph.n != 3 or any(len(k) != 1 for k in graph.side_info):
        return False
    succ = [next(iter(k)) for k in graph.side_info]
    seen = {0, succ[0], succ[succ[0]]}
    return len(seen) == 3 and succ[succ[succ[0]]] == 0


def achievable_points(graph: SideInfoGraph, field: FieldSpec, r_grid=None,
                      verify: bool = True) -> tuple[list[TradeoffPoint], list[str]]:
    """Collect verified achievable points from every applicable scheme.

    Schemes whose preconditions fail are skipped and reported. With r_grid,
    the covering ILP and LP over the merged catalog contribute one point per
    grid value.
    """
    points: list[TradeoffPoint] = []
    skipped: list[str] = []

    def add(code: LinearIndexCode) -> None:
        if verify:
            result = verify_code(code, graph)
            if not result.valid:
                raise AssertionError(
                    f"internal error: {code.provenance} failed verification")
        metrics = code_metrics(code)
        points.append(TradeoffPoint(metrics.locality, metrics.beta,
                                    code.provenance, code))

    chi_f, witness = coloring.fractional_chromatic(interference_graph(graph))
    add(coloring.fractional_coloring_code(graph, witness, field))

    value, fitting = minrank(graph, field)
    encoder = optimal_scalar_encoder(fitting)
    add(scalar_code(encoder, fitting))

    girth = girth_directed(graph)
    max_t = graph.n if math.isinf(girth) else min(graph.n, int(girth) - 1)
    for t in range(1, max_t + 1):
        add(schemes.ais_cover_code(graph, schemes.t_subset_cover(graph, t),
                                   encoder, fitting))

    if has_cyclic_automorphism(graph):
        add(schemes.cyclic_balanced_code(graph, field))
    else:
        skipped.append("cyclic-balanced: shift is not an automorphism")

    for radius in range(1, value + 1):
        try:
            # modest search budget: expensive intermediate radii get skipped
            add(schemes.separation_code(graph, field, radius, subset_budget=20_000))
        except (BudgetError, SchemeError) as exc:
            skipped.append(f"separation radius={radius}: {exc}")

    if r_grid:
        catalog = covering.merged_catalog(graph, field)
        for r in r_grid:
            r = Fraction(r)
            for solver in (covering.covering_ilp, covering.covering_lp):
                try:
                    solution = solver(graph, catalog, r)
                    add(covering.materialize_cover(graph, catalog, solution))
                except ToolkitError as exc:
                    skipped.append(f"{solver.__name__} r={r}: {exc}")

    unique: dict[tuple[Fraction, Fraction], TradeoffPoint] = {}
    for point in sorted(points, key=lambda p: (p.locality, p.beta, p.provenance)):
        unique.setdefault((point.locality, point.beta), point)
    return list(unique.values()), skipped


def upper_envelope(points) -> UpperEnvelope:
    """Lower convex envelope of the points, non-increasing, flat after the
    first point attaining the minimum rate."""
    if not points:
        raise ValueError("need at least one achievable point")
    best_at: dict[Fraction, tuple[Fraction, str]] = {}
    for point in points:
        cur = best_at.get(point.locality)
        if cur is None or point.beta < cur[0]:
            best_at[point.locality] = (point.beta, point.provenance)
    items = sorted((r, b, p) for r, (b, p) in best_at.items())
    hull: list[tuple[Fraction, Fraction, str]] = []
    for entry in items:
        while len(hull) >= 2:
            (x1, y1, _), (x2, y2, _) = hull[-2], hull[-1]
            x3, y3 = entry[0], entry[1]
            # keep only counterclockwise turns on the lower hull
            if (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(entry)
    # cut at the first breakpoint attaining the minimum rate; flat afterwards
    min_beta = min(b for _, b, _ in hull)
    trimmed = []
    for r, b, p in hull:
        trimmed.append((r, b, p))
        if b == min_beta:
            break
    return UpperEnvelope(tuple(trimmed))


def lower_bound_curve(graph: SideInfoGraph, field: FieldSpec) -> LowerBoundCurve:
    chi_f, _ = coloring.fractional_chromatic(interference_graph(graph))
    return LowerBoundCurve(mais_size(graph), chi_f, is_directed_three_cycle(graph))


def render_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def tradeoff_csv(graph: SideInfoGraph, field: FieldSpec, grid) -> str:
    """CSV with the raw achievable points and both curves sampled on the grid."""
    grid = [Fraction(g) for g in grid]
    points, _skipped = achievable_points(graph, field, r_grid=grid)
    envelope = upper_envelope(points)
    lower = lower_bound_curve(graph, field)
    lines = ["r,beta,kind,provenance"]
    for point in points:
        lines.append(f"{render_fraction(point.locality)},{render_fraction(point.beta)},"
                     f"achievable,{point.provenance}")
    for r in grid:
        lines.append(f"{render_fraction(r)},{render_fraction(envelope.value(r))},"
                     f"upper,{envelope.witness(r)}")
    for r in grid:
        lines.append(f"{render_fraction(r)},{render_fraction(lower.value(r))},"
                     f"lower,{lower.describe(r)}")
    return "\n".join(lines) + "\n"
