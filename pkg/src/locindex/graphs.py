"""Side-information graphs, derived graphs, and structural queries.

Vertices are 1-indexed in JSON files and 0-indexed everywhere else; the
conversion lives only in parse/serialize.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .errors import GraphFormatError


@dataclass(frozen=True)
class SideInfoGraph:
    """Directed graph with an edge (i, j) iff receiver i already knows message j."""

    n: int
    side_info: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphFormatError("graph needs at least one vertex")
        if len(self.side_info) != self.n:
            raise GraphFormatError("side_info length must equal n")
        for i, known in enumerate(self.side_info):
            for j in known:
                if not (0 <= j < self.n):
                    raise GraphFormatError(f"side info index {j} out of range")
            if i in known:
                raise GraphFormatError(f"receiver {i + 1} lists itself as side information")

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.side_info[i]

    def edges(self):
        for i in range(self.n):
            for j in sorted(self.side_info[i]):
                yield (i, j)

    def num_edges(self) -> int:
        return sum(len(k) for k in self.side_info)


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for (a, b) in self.edges:
            if not (0 <= a < b < self.n):
                raise GraphFormatError("undirected edges must be sorted pairs without loops")

    def has_edge(self, a: int, b: int) -> bool:
        if a > b:
            a, b = b, a
        return (a, b) in self.edges

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for (a, b) in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out


def graph_from_dict(obj) -> SideInfoGraph:
    if not isinstance(obj, dict):
        raise GraphFormatError("graph document must be a JSON object")
    extra = set(obj) - {"n", "side_info"}
    if extra:
        raise GraphFormatError(f"unexpected keys: {sorted(extra)}")
    if "n" not in obj or "side_info" not in obj:
        raise GraphFormatError('graph document needs "n" and "side_info"')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise GraphFormatError('"n" must be a positive integer')
    raw = obj["side_info"]
    if not isinstance(raw, list) or len(raw) != n:
        raise GraphFormatError('"side_info" must be a list of n lists')
    side = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, list):
            raise GraphFormatError(f"side_info[{i}] must be a list")
        known = set()
        for j in entry:
            if not isinstance(j, int) or not (1 <= j <= n):
                raise GraphFormatError(f"side_info[{i}] has out-of-range index {j!r}")
            known.add(j - 1)
        side.append(frozenset(known))
    return SideInfoGraph(n, tuple(side))


def parse_graph(text: str) -> SideInfoGraph:
    """Parse the JSON graph format {"n": int, "side_info": [[int, ...], ...]} (1-indexed)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(obj)


def serialize_graph(graph: SideInfoGraph) -> str:
    """Canonical JSON form: sorted side-information sets, 1-indexed."""
    obj = {
        "n": graph.n,
        "side_info": [sorted(j + 1 for j in known) for known in graph.side_info],
    }
    return json.dumps(obj, sort_keys=True)


def interference_graph(graph: SideInfoGraph) -> UndirectedGraph:
    """Pairs where at least one receiver lacks the other's message."""
    edges = set()
    for a, b in combinations(range(graph.n), 2):
        if not (graph.has_edge(a, b) and graph.has_edge(b, a)):
            edges.add((a, b))
    return UndirectedGraph(graph.n, frozenset(edges))


def induced_subgraph(graph: SideInfoGraph, vertices) -> tuple[SideInfoGraph, tuple[int, ...]]:
    """Subgraph on the given vertex set, relabeled to 0..k-1 by ascending
    original index. Returns (subgraph, map from new index to original)."""
    vmap = tuple(sorted(set(vertices)))
    if not vmap:
        raise GraphFormatError("induced subgraph needs a nonempty vertex set")
    for v in vmap:
        if not (0 <= v < graph.n):
            raise GraphFormatError(f"vertex {v} out of range")
    position = {v: k for k, v in enumerate(vmap)}
    side = tuple(frozenset(position[j] for j in graph.side_info[v] if j in position)
                 for v in vmap)
    return SideInfoGraph(len(vmap), side), vmap


class TopoResult(NamedTuple):
    order: tuple[int, ...] | None
    cycle: tuple[int, ...] | None


def topological_order(graph: SideInfoGraph) -> TopoResult:
    """Kahn's algorithm with min-index tie-breaking; on failure returns a
    directed cycle witness instead of an order."""
    indeg = [0] * graph.n
    for _, j in graph.edges():
        indeg[j] += 1
    ready = sorted(v for v in range(graph.n) if indeg[v] == 0)
    order = []
    indeg = list(indeg)
    while ready:
        v = ready.pop(0)
        order.append(v)
        inserted = False
        for j in sorted(graph.side_info[v]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
                inserted = True
        if inserted:
            ready.sort()
    if len(order) == graph.n:
        return TopoResult(tuple(order), None)
    # trim vertices with no outgoing edge inside the remainder; a cycle survives
    remaining = set(range(graph.n)) - set(order)
    changed = True
    while changed:
        changed = False
        for v in list(remaining):
            if not (graph.side_info[v] & remaining):
                remaining.discard(v)
                changed = True
    seen: list[int] = []
    v = min(remaining)
    while v not in seen:
        seen.append(v)
        v = min(j for j in graph.side_info[v] if j in remaining)
    cycle = seen[seen.index(v):]
    return TopoResult(None, tuple(cycle))


def is_acyclic(graph: SideInfoGraph) -> bool:
    return topological_order(graph).order is not None


def girth_directed(graph: SideInfoGraph) -> int | float:
    """Length of the shortest directed cycle, or math.inf if acyclic."""
    best = math.inf
    for start in range(graph.n):
        # BFS over edges; distance back to start = shortest cycle through it
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for j in graph.side_info[v]:
                    if j == start:
                        best = min(best, dist[v] + 1)
                    elif j not in dist:
                        dist[j] = dist[v] + 1
                        nxt.append(j)
            frontier = nxt
    return best


def is_directed_cycle(graph: SideInfoGraph) -> bool:
    """True iff the graph is a single directed Hamiltonian cycle and nothing else."""
    if graph.n < 2:
        return False
    if any(len(k) != 1 for k in graph.side_info):
        return False
    seen = [0]
    v = 0
    for _ in range(graph.n):
        v = next(iter(graph.side_info[v]))
        if v == 0:
            break
        seen.append(v)
    return v == 0 and len(seen) == graph.n


def directed_cycle_order(graph: SideInfoGraph) -> tuple[int, ...]:
    """Vertices of a directed cycle graph in traversal order from vertex 0."""
    if not is_directed_cycle(graph):
        raise ValueError("graph is not a single directed cycle")
    order = [0]
    v = next(iter(graph.side_info[0]))
    while v != 0:
        order.append(v)
        v = next(iter(graph.side_info[v]))
    return tuple(order)


def has_cyclic_automorphism(graph: SideInfoGraph) -> bool:
    """Whether i -> i+1 (mod n) preserves the edge set."""
    n = graph.n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if graph.has_edge(i, j) != graph.has_edge((i + 1) % n, (j + 1) % n):
                return False
    return True


def mais_size(graph: SideInfoGraph) -> int:
    """Size of a maximum acyclic induced subgraph (exhaustive, n <= ~12)."""
    for size in range(graph.n, 0, -1):
        for vs in combinations(range(graph.n), size):
            sub, _ = induced_subgraph(graph, vs)
            if is_acyclic(sub):
                return size
    return 0
