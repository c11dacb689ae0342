"""Component-code catalogs and the locality-constrained covering optimizers.

A catalog holds, for each vertex subset, a component code on the induced
subgraph together with its bookkeeping values (message length, codelength,
rate, locality). The integer program picks a partition of the vertex set
out of components whose locality fits the budget; the linear program
relaxes the weights and realizes its optimum by time-sharing scaled copies
of the chosen components.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from itertools import combinations

from . import fieldmath, ratlp
from .codes import Decoder, LinearIndexCode, assemble_code, scalar_code
from .errors import BudgetError, InfeasibleError
from .fieldmath import FieldSpec, GFMatrix
from .graphs import SideInfoGraph, directed_cycle_order, induced_subgraph, is_directed_cycle
from .minrank import FittingMatrix, minrank, optimal_scalar_encoder
from .schemes import ais_cover_code, t_subset_cover

CATALOG_SUBSET_LIMIT = 8
ORACLE_LIMIT = 8


@dataclass(eq=False)
class ComponentCode:
    """One reusable building block: a code for the subgraph induced by `subset`."""

    subset: tuple[int, ...]
    m: int
    length: int
    beta: Fraction
    locality: Fraction
    scheme: str
    _builder: object = dataclass_field(repr=False)
    _built: LinearIndexCode | None = dataclass_field(default=None, repr=False)

    def build(self) -> LinearIndexCode:
        if self._built is None:
            self._built = self._builder()
        return self._built


@dataclass(frozen=True)
class Catalog:
    kind: str
    field: FieldSpec
    components: tuple[ComponentCode, ...]


@dataclass(frozen=True)
class CoverSolution:
    selection: tuple[tuple[ComponentCode, Fraction], ...]
    objective: Fraction
    integral: bool


def mds_parity_encoder(n: int, k: int, field: FieldSpec) -> GFMatrix:
    """Transpose of a parity-check matrix of an [n, k] MDS code.

    k in {0, 1, n-1, n} works over any field; in between a Vandermonde
    parity check is used, which needs q >= n distinct evaluation points.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    q = field.q
    if k == n:
        return GFMatrix.zeros(field, n, 0)
    if k == 0:
        return GFMatrix.identity(field, n)
    if k == n - 1:
        return GFMatrix.from_rows(field, [[1] for _ in range(n)], ncols=1)
    if k == 1:
        rows = [[1 if r == c else 0 for c in range(n - 1)] for r in range(n - 1)]
        rows.append([(q - 1)] * (n - 1))
        return GFMatrix.from_rows(field, rows, ncols=n - 1)
    if q < n:
        raise ValueError(f"field of order {q} too small for an MDS code of length {n}")
    rows = [[pow(j, t, q) for t in range(n - k)] for j in range(n)]
    return GFMatrix.from_rows(field, rows, ncols=n - k)


def _full_query_scalar_code(encoder: GFMatrix, fitting: FittingMatrix,
                            provenance: str) -> LinearIndexCode:
    """Scalar code whose receivers query the whole codeword (trivial locality)."""
    graph = fitting.graph
    field = encoder.field
    queries = []
    decoders = []
    for i in range(graph.n):
        vec = fieldmath.solve(encoder, fitting.column(i))
        if vec is None:
            raise ValueError("fitting column outside the encoder column space")
        queries.append(tuple(range(encoder.ncols)))
        coeffs = GFMatrix.from_rows(field, [[v] for v in vec], ncols=1)
        known = sorted(graph.side_info[i])
        side = GFMatrix.from_rows(
            field, [[field.neg(fitting.matrix.at(j, i))] for j in known], ncols=1)
        decoders.append(Decoder(coeffs, side))
    return LinearIndexCode(field, graph.n, 1, encoder.ncols, encoder,
                           tuple(queries), tuple(decoders), provenance)


def _mds_fitting(sub: SideInfoGraph, encoder: GFMatrix) -> FittingMatrix:
    """Fitting matrix inside the MDS encoder's column space, receiver by receiver."""
    field = encoder.field
    n = sub.n
    cols = []
    for i in range(n):
        constrained = [i] + [j for j in range(n) if j != i and j not in sub.side_info[i]]
        coeff = encoder.take_rows(constrained)
        target = [1] + [0] * (len(constrained) - 1)
        y = fieldmath.solve(coeff, target)
        if y is None:
            raise ValueError("MDS component cannot serve this receiver")
        cols.append(tuple(
            sum(y[c] * encoder.at(r, c) for c in range(encoder.ncols)) % field.q
            for r in range(n)))
    return FittingMatrix(sub, GFMatrix.from_cols(field, cols, nrows=n))


def partial_clique_component(graph: SideInfoGraph, subset, field: FieldSpec) -> ComponentCode:
    """MDS-encoded subset: codelength |S| minus the worst in-subset side
    information; every receiver reads the full component codeword."""
    subset = tuple(sorted(set(subset)))
    sub, _ = induced_subgraph(graph, subset)
    k = min(len(sub.side_info[u]) for u in range(sub.n))
    encoder = mds_parity_encoder(sub.n, k, field)
    length = sub.n - k

    def build(sub=sub, encoder=encoder):
        fitting = _mds_fitting(sub, encoder)
        return _full_query_scalar_code(encoder, fitting, "partial-clique")

    return ComponentCode(subset, 1, length, Fraction(length), Fraction(length),
                         "partial-clique", build)


def cycle_component(graph: SideInfoGraph, subset, field: FieldSpec) -> ComponentCode:
    """Directed-cycle subsets save one symbol via a repetition parity check;
    anything else is sent uncoded."""
    subset = tuple(sorted(set(subset)))
    sub, _ = induced_subgraph(graph, subset)
    n = sub.n
    if is_directed_cycle(sub):
        def build(sub=sub, field=field, n=n):
            q = field.q
            mat = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            for u in range(n):
                nxt = next(iter(sub.side_info[u]))
                mat[nxt][u] = q - 1
            fitting = FittingMatrix(sub, GFMatrix.from_rows(field, mat))
            rows = [[1 if r == c else 0 for c in range(n - 1)] for r in range(n - 1)]
            rows.append([(q - 1)] * (n - 1))
            encoder = GFMatrix.from_rows(field, rows, ncols=n - 1)
            return scalar_code(encoder, fitting, provenance="cycle-save")

        return ComponentCode(subset, 1, n - 1, Fraction(n - 1), Fraction(n - 1),
                             "cycle-save", build)

    def build_uncoded(sub=sub, field=field):
        fitting = FittingMatrix(sub, GFMatrix.identity(field, sub.n))
        return scalar_code(GFMatrix.identity(field, sub.n), fitting, provenance="uncoded")

    return ComponentCode(subset, 1, n, Fraction(n), Fraction(1), "uncoded", build_uncoded)


def minrank_component(graph: SideInfoGraph, subset, field: FieldSpec) -> ComponentCode:
    """Optimal scalar code for the induced subgraph."""
    subset = tuple(sorted(set(subset)))
    sub, _ = induced_subgraph(graph, subset)
    value, fitting = minrank(sub, field)

    def build(fitting=fitting):
        return scalar_code(optimal_scalar_encoder(fitting), fitting,
                           provenance="minrank-component")

    return ComponentCode(subset, 1, value, Fraction(value), Fraction(value),
                         "minrank", build)


def vectorize_component(component: ComponentCode, graph: SideInfoGraph,
                        field: FieldSpec) -> ComponentCode:
    """Trade message length for locality with an acyclic-subset cover of the
    component's subgraph: singleton subsets for general components, all
    (|S|-1)-subsets for directed cycles. Uncoded components stay as they are."""
    subset = component.subset
    size = len(subset)
    if size == 1 or component.scheme == "uncoded":
        return component
    sub, _ = induced_subgraph(graph, subset)
    if component.scheme == "cycle-save":
        t = size - 1
        locality = Fraction(2 * (size - 1), size)
    else:
        t = 1
        locality = Fraction(1 + (size - 1) * component.length, size)

    def build(component=component, sub=sub, t=t):
        encoder, fitting = _scalar_ingredients(component, sub, field)
        return ais_cover_code(sub, t_subset_cover(sub, t), encoder, fitting)

    return ComponentCode(subset, size, size * component.length, component.beta,
                         locality, f"vector-{component.scheme}", build)


def _scalar_ingredients(component: ComponentCode, sub: SideInfoGraph,
                        field: FieldSpec) -> tuple[GFMatrix, FittingMatrix]:
    if component.scheme == "cycle-save":
        n = sub.n
        q = field.q
        mat = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for u in range(n):
            nxt = next(iter(sub.side_info[u]))
            mat[nxt][u] = q - 1
        fitting = FittingMatrix(sub, GFMatrix.from_rows(field, mat))
        rows = [[1 if r == c else 0 for c in range(n - 1)] for r in range(n - 1)]
        rows.append([(q - 1)] * (n - 1))
        return GFMatrix.from_rows(field, rows, ncols=n - 1), fitting
    if component.scheme == "partial-clique":
        k = min(len(sub.side_info[u]) for u in range(sub.n))
        encoder = mds_parity_encoder(sub.n, k, field)
        return encoder, _mds_fitting(sub, encoder)
    if component.scheme == "minrank":
        _, fitting = minrank(sub, field)
        return optimal_scalar_encoder(fitting), fitting
    raise ValueError(f"cannot vectorize scheme {component.scheme!r}")


def _all_subsets(n: int):
    for size in range(1, n + 1):
        yield from combinations(range(n), size)


def smallest_prime_at_least(n: int) -> int:
    p = max(2, n)
    while not fieldmath.is_prime(p):
        p += 1
    return p


def build_catalog(graph: SideInfoGraph, kind: str, field: FieldSpec | None = None,
                  vector: bool = False, subsets=None) -> Catalog:
    """Catalog of one component per subset. kind is one of 'partial-clique',
    'cycle', 'minrank'. With vector=True every component is vectorized.

    For partial-clique catalogs without an explicit field, the smallest
    prime at least the largest subset size is selected so that every MDS
    encoder exists; the chosen field is reported on the catalog."""
    if subsets is None:
        if graph.n > CATALOG_SUBSET_LIMIT:
            raise BudgetError(
                f"full subset catalogs stop at n = {CATALOG_SUBSET_LIMIT}; pass subsets")
        subsets = list(_all_subsets(graph.n))
    subsets = [tuple(sorted(set(s))) for s in subsets]
    subsets.sort(key=lambda s: (len(s), s))
    if field is None:
        if kind == "partial-clique":
            field = FieldSpec(smallest_prime_at_least(max(len(s) for s in subsets)))
        else:
            field = FieldSpec(2)
    makers = {
        "partial-clique": partial_clique_component,
        "cycle": cycle_component,
        "minrank": minrank_component,
    }
    if kind not in makers:
        raise ValueError(f"unknown catalog kind {kind!r}")
    components = []
    for s in subsets:
        component = makers[kind](graph, s, field)
        if vector:
            component = vectorize_component(component, graph, field)
        components.append(component)
    name = f"vector-{kind}" if vector else kind
    return Catalog(name, field, tuple(components))


def merged_catalog(graph: SideInfoGraph, field: FieldSpec,
                   include_vector: bool = True, subsets=None) -> Catalog:
    """Union of all constructible component families over one field.

    Partial-clique components that would need a larger field are skipped;
    cycle and minrank components exist over any prime field."""
    if subsets is None:
        if graph.n > CATALOG_SUBSET_LIMIT:
            raise BudgetError(
                f"full subset catalogs stop at n = {CATALOG_SUBSET_LIMIT}; pass subsets")
        subsets = list(_all_subsets(graph.n))
    subsets = [tuple(sorted(set(s))) for s in subsets]
    subsets.sort(key=lambda s: (len(s), s))
    components = []
    for s in subsets:
        per_subset = []
        for kind in ("cycle", "minrank"):
            per_subset.append(build_catalog(graph, kind, field, subsets=[s]).components[0])
            if include_vector:
                per_subset.append(
                    build_catalog(graph, kind, field, vector=True, subsets=[s]).components[0])
        try:
            per_subset.append(build_catalog(graph, "partial-clique", field,
                                            subsets=[s]).components[0])
            if include_vector:
                per_subset.append(build_catalog(graph, "partial-clique", field,
                                                vector=True, subsets=[s]).components[0])
        except ValueError:
            pass
        seen = set()
        for component in per_subset:
            key = (component.m, component.length, component.locality, component.beta)
            if key not in seen:
                seen.add(key)
                components.append(component)
    return Catalog("merged", field, tuple(components))


def catalog_to_json(catalog: Catalog) -> str:
    entries = [
        {
            "subset": [v + 1 for v in component.subset],
            "m": component.m,
            "len": component.length,
            "beta": str(component.beta),
            "locality": str(component.locality),
            "scheme": component.scheme,
        }
        for component in catalog.components
    ]
    return json.dumps({"kind": catalog.kind, "q": catalog.field.q,
                       "components": entries}, sort_keys=True)


def _check_locality_budget(budget: Fraction) -> None:
    if budget < 1:
        raise InfeasibleError("locality budget below 1 is unachievable")


def covering_ilp(graph: SideInfoGraph, catalog: Catalog, budget) -> CoverSolution:
    """Cheapest partition of the vertex set into components of locality at
    most `budget`; branch and bound over the exact-cover structure."""
    budget = Fraction(budget)
    _check_locality_budget(budget)
    admissible = [c for c in catalog.components if c.locality <= budget]
    admissible.sort(key=lambda c: (c.beta / len(c.subset), c.subset, c.scheme))
    containing: dict[int, list[ComponentCode]] = {v: [] for v in range(graph.n)}
    for component in admissible:
        for v in component.subset:
            containing[v].append(component)
    if any(not lst for lst in containing.values()):
        raise InfeasibleError("some vertex is in no admissible component")
    min_density = min(c.beta / len(c.subset) for c in admissible)
    best_cost: list[Fraction | None] = [None]
    best_pick: list[tuple[ComponentCode, ...] | None] = [None]

    def extend(uncovered: frozenset[int], cost: Fraction, picked: tuple) -> None:
        if not uncovered:
            if best_cost[0] is None or cost < best_cost[0]:
                best_cost[0] = cost
                best_pick[0] = picked
            return
        if best_cost[0] is not None and cost + min_density * len(uncovered) >= best_cost[0]:
            return
        v = min(uncovered)
        for component in containing[v]:
            members = set(component.subset)
            if members <= uncovered:
                extend(uncovered - members, cost + component.beta,
                       picked + (component,))

    extend(frozenset(range(graph.n)), Fraction(0), ())
    if best_cost[0] is None:
        raise InfeasibleError("no admissible partition exists")
    selection = tuple((component, Fraction(1)) for component in best_pick[0])
    return CoverSolution(selection, best_cost[0], True)


def exhaustive_partition_oracle(graph: SideInfoGraph, catalog: Catalog, budget) -> Fraction:
    """Plain enumeration of every partition into admissible components;
    independent cross-check for the branch-and-bound optimizer."""
    if graph.n > ORACLE_LIMIT:
        raise BudgetError(f"oracle limited to n <= {ORACLE_LIMIT}")
    budget = Fraction(budget)
    _check_locality_budget(budget)
    admissible = [c for c in catalog.components if c.locality <= budget]
    best: list[Fraction | None] = [None]

    def recurse(uncovered: frozenset[int], cost: Fraction) -> None:
        if not uncovered:
            if best[0] is None or cost < best[0]:
                best[0] = cost
            return
        v = min(uncovered)
        for component in admissible:
            if v in component.subset and set(component.subset) <= uncovered:
                recurse(uncovered - set(component.subset), cost + component.beta)

    recurse(frozenset(range(graph.n)), Fraction(0))
    if best[0] is None:
        raise InfeasibleError("no admissible partition exists")
    return best[0]


def covering_lp(graph: SideInfoGraph, catalog: Catalog, budget) -> CoverSolution:
    """Fractional cover: weights in [0, 1] per component, exact rate coverage
    per receiver, and per-receiver averaged locality at most `budget`."""
    budget = Fraction(budget)
    _check_locality_budget(budget)
    components = list(catalog.components)
    objective = [c.beta for c in components]
    eq_rows = []
    eq_rhs = []
    ub_rows = []
    ub_rhs = []
    for v in range(graph.n):
        eq_rows.append([Fraction(1) if v in c.subset else Fraction(0) for c in components])
        eq_rhs.append(Fraction(1))
        ub_rows.append([c.locality if v in c.subset else Fraction(0) for c in components])
        ub_rhs.append(budget)
    value, weights = ratlp.solve_lp(objective, eq_rows, eq_rhs, ub_rows, ub_rhs)
    selection = tuple((c, w) for c, w in zip(components, weights) if w > 0)
    return CoverSolution(selection, value, all(w == 1 for _, w in selection))


def materialize_cover(graph: SideInfoGraph, catalog: Catalog,
                      solution: CoverSolution) -> LinearIndexCode:
    """Turn cover weights into a concrete code: scale weights to integer
    repetition counts by a common message length and direct-sum the copies."""
    denominators = [(w / c.m).denominator for c, w in solution.selection]
    m = math.lcm(*denominators)
    instances = []
    for component, weight in solution.selection:
        copies = weight * m / component.m
        assert copies.denominator == 1
        built = component.build()
        instances.extend((component.subset, built) for _ in range(int(copies)))
    tag = "ilp" if solution.integral else "lp"
    provenance = (f"covering-{tag} catalog={catalog.kind} beta={solution.objective} "
                  + " ".join(f"{_subset_name(c.subset)}:{w}" for c, w in solution.selection))
    return assemble_code(graph, instances, provenance)


def _subset_name(subset) -> str:
    # joined with + so provenance strings stay comma-free for CSV output
    return "{" + "+".join(str(v + 1) for v in subset) + "}"
