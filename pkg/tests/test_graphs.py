import json
import math
import random

import pytest
from conftest import (bidirected_complete, circulant, directed_cycle, edgeless,
                      graph_of, random_graph, undirected_cycle_side_info)

from locindex.errors import GraphFormatError
from locindex.graphs import (girth_directed, has_cyclic_automorphism,
                             induced_subgraph, interference_graph,
                             is_directed_cycle, mais_size, parse_graph,
                             serialize_graph, topological_order)


def test_parse_three_cycle():
    g = parse_graph('{"n":3,"side_info":[[2],[3],[1]]}')
    assert g.n == 3
    assert g.side_info == (frozenset({1}), frozenset({2}), frozenset({0}))


def test_parse_empty_side_info():
    g = parse_graph('{"n":2,"side_info":[[],[]]}')
    assert g.num_edges() == 0


def test_parse_rejects_self_knowledge():
    with pytest.raises(GraphFormatError):
        parse_graph('{"n":2,"side_info":[[1],[]]}')


def test_parse_rejects_bad_documents():
    for text in ('[]', '{"n":2}', '{"n":2,"side_info":[[3],[]]}',
                 '{"n":2,"side_info":[[]]}', '{"n":0,"side_info":[]}',
                 'not json', '{"n":2,"side_info":[[],[]],"extra":1}'):
        with pytest.raises(GraphFormatError):
            parse_graph(text)


def test_serialize_round_trip_is_canonical():
    g = parse_graph('{"n":3,"side_info":[[3,2],[],[1]]}')
    text = serialize_graph(g)
    assert text == json.dumps({"n": 3, "side_info": [[2, 3], [], [1]]}, sort_keys=True)
    assert serialize_graph(parse_graph(text)) == text


def test_interference_of_directed_cycle_is_complete():
    h = interference_graph(directed_cycle(3))
    assert sorted(h.edges) == [(0, 1), (0, 2), (1, 2)]


def test_interference_of_mutual_complete_is_edgeless():
    assert not interference_graph(bidirected_complete(4)).edges


def test_interference_of_undirected_five_cycle_is_complement():
    h = interference_graph(undirected_cycle_side_info(5))
    expected = {(i, j) for i in range(5) for j in range(i + 1, 5)
                if (j - i) % 5 not in (1, 4)}
    assert set(h.edges) == expected


def test_induced_subgraph_keeps_only_inside_knowledge():
    g = directed_cycle(3)
    sub, vmap = induced_subgraph(g, [0, 1])
    assert vmap == (0, 1)
    assert sub.side_info == (frozenset({1}), frozenset())


def test_induced_subgraph_full_set_round_trip():
    rng = random.Random(2)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 7), 0.4)
        sub, vmap = induced_subgraph(g, range(g.n))
        assert sub == g
        assert vmap == tuple(range(g.n))


def test_induced_subgraph_singleton():
    sub, _ = induced_subgraph(directed_cycle(3), [0])
    assert sub.n == 1 and sub.num_edges() == 0


def test_induced_subgraph_rejects_empty():
    with pytest.raises(GraphFormatError):
        induced_subgraph(directed_cycle(3), [])


def test_topological_order_reports_cycle():
    result = topological_order(directed_cycle(3))
    assert result.order is None
    assert sorted(result.cycle) == [0, 1, 2]


def test_topological_order_edgeless():
    assert topological_order(edgeless(4)).order == (0, 1, 2, 3)


def test_topological_order_of_broken_cycle():
    sub, _ = induced_subgraph(directed_cycle(3), [0, 1])
    order = topological_order(sub).order
    assert order is not None
    # edge 0 -> 1 must go forward
    assert list(order).index(0) < list(order).index(1)


def test_topological_order_respects_all_edges_randomized():
    rng = random.Random(9)
    checked = 0
    while checked < 15:
        g = random_graph(rng, rng.randint(2, 7), 0.3)
        result = topological_order(g)
        if result.order is None:
            cycle = result.cycle
            assert len(cycle) >= 2
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                assert g.has_edge(a, b)
            continue
        pos = {v: k for k, v in enumerate(result.order)}
        for i, j in g.edges():
            assert pos[i] < pos[j]
        checked += 1


def test_girth_of_cycles_and_edgeless():
    for n in (2, 3, 4, 5):
        assert girth_directed(directed_cycle(n)) == n
    assert girth_directed(edgeless(5)) == math.inf


def test_girth_with_mutual_pair():
    g = graph_of(3, [[2, 3], [3], [1]])
    assert girth_directed(g) == 2


def test_is_directed_cycle():
    assert is_directed_cycle(directed_cycle(3))
    assert not is_directed_cycle(graph_of(3, [[2, 3], [3], [1]]))
    assert not is_directed_cycle(graph_of(1, [[]]))
    assert not is_directed_cycle(edgeless(3))


def test_topological_order_iff_infinite_girth():
    rng = random.Random(21)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 6), rng.choice([0.2, 0.5]))
        acyclic = topological_order(g).order is not None
        assert acyclic == (girth_directed(g) == math.inf)


def test_cyclic_automorphism_on_circulants():
    assert has_cyclic_automorphism(directed_cycle(4))
    assert has_cyclic_automorphism(circulant(5, (1, 2)))
    assert has_cyclic_automorphism(edgeless(3))


def test_cyclic_automorphism_breaks_with_one_extra_edge():
    for n in (3, 4, 5):
        side = [[(i + 1) % n + 1] for i in range(n)]
        side[0] = sorted(side[0] + [n])  # add edge 1 -> n
        assert not has_cyclic_automorphism(graph_of(n, side))


def test_mais_sizes():
    assert mais_size(directed_cycle(3)) == 2
    assert mais_size(directed_cycle(5)) == 4
    assert mais_size(edgeless(4)) == 4
    assert mais_size(bidirected_complete(4)) == 1
