import random

import pytest
from conftest import (bidirected_complete, brute_force_minrank, directed_cycle,
                      edgeless, graph_of, random_graph)

from locindex.codes import code_metrics, scalar_code, verify_code
from locindex.fieldmath import FieldSpec, GFMatrix, column_space_contains, rank
from locindex.graphs import is_acyclic
from locindex.minrank import (FittingMatrix, free_positions, minrank,
                              optimal_scalar_encoder)


def test_fitting_matrix_validation():
    g = directed_cycle(3)
    f = FieldSpec(2)
    with pytest.raises(ValueError):
        FittingMatrix(g, GFMatrix.zeros(f, 3, 3))  # no unit diagonal
    bad = GFMatrix.from_rows(f, [[1, 0, 0], [1, 1, 0], [1, 0, 1]])
    with pytest.raises(ValueError):
        FittingMatrix(g, bad)  # entry (2,0) nonzero but receiver 0 does not know 2
    FittingMatrix(g, GFMatrix.identity(f, 3))


def test_free_positions_row_major():
    g = directed_cycle(3)
    assert free_positions(g) == [(0, 2), (1, 0), (2, 1)]


def test_minrank_three_cycle():
    value, witness = minrank(directed_cycle(3), FieldSpec(2))
    assert value == 2
    assert rank(witness.matrix) == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_minrank_directed_cycles(n):
    value, witness = minrank(directed_cycle(n), FieldSpec(2))
    assert value == n - 1
    assert rank(witness.matrix) == n - 1


def test_minrank_edgeless_is_n():
    for n in (1, 2, 4):
        value, witness = minrank(edgeless(n), FieldSpec(3))
        assert value == n
        assert witness.matrix == GFMatrix.identity(FieldSpec(3), n)


def test_minrank_bidirected_complete_is_one():
    value, witness = minrank(bidirected_complete(4), FieldSpec(2))
    assert value == 1
    assert all(x == 1 for row in witness.matrix.rows for x in row)


def test_minrank_matches_brute_force_small():
    rng = random.Random(13)
    for q in (2, 3):
        for _ in range(8):
            g = random_graph(rng, rng.randint(1, 4), rng.choice([0.3, 0.6]))
            value, witness = minrank(g, FieldSpec(q))
            assert value == brute_force_minrank(g, q)
            assert rank(witness.matrix) == value


def test_minrank_subspace_path_agrees_with_enumeration():
    # force the fallback by shrinking the enumeration budget
    rng = random.Random(29)
    for q in (2, 3):
        for _ in range(8):
            g = random_graph(rng, rng.randint(2, 5), 0.7)
            full = minrank(g, FieldSpec(q))[0]
            forced = minrank(g, FieldSpec(q), enumeration_budget=1)[0]
            assert forced == full


def test_minrank_n_iff_acyclic():
    rng = random.Random(41)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 5), rng.choice([0.2, 0.5, 0.8]))
        value, _ = minrank(g, FieldSpec(2))
        assert (value == g.n) == is_acyclic(g)


def test_optimal_encoder_takes_first_independent_columns():
    g = directed_cycle(3)
    f = FieldSpec(2)
    mat = GFMatrix.from_cols(f, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    fitting = FittingMatrix(g, mat)
    encoder = optimal_scalar_encoder(fitting)
    assert encoder.rows == mat.take_columns([0, 1]).rows
    assert column_space_contains(encoder, mat)


def test_optimal_encoder_identity_fitting():
    g = edgeless(3)
    fitting = FittingMatrix(g, GFMatrix.identity(FieldSpec(2), 3))
    assert optimal_scalar_encoder(fitting) == GFMatrix.identity(FieldSpec(2), 3)


def test_optimal_encoder_five_cycle_has_four_columns():
    value, witness = minrank(directed_cycle(5), FieldSpec(2))
    encoder = optimal_scalar_encoder(witness)
    assert encoder.ncols == value == 4


def test_scalar_codes_from_minrank_verify_everywhere():
    rng = random.Random(55)
    for q in (2, 3):
        for _ in range(10):
            g = random_graph(rng, rng.randint(1, 5), rng.choice([0.3, 0.7]))
            value, witness = minrank(g, FieldSpec(q))
            code = scalar_code(optimal_scalar_encoder(witness), witness)
            metrics = code_metrics(code)
            assert metrics.beta == value
            assert verify_code(code, g).valid
