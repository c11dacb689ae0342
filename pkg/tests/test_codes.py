import random
from fractions import Fraction as F

import pytest
from conftest import directed_cycle, edgeless, graph_of, random_graph

from locindex.codes import (Decoder, LinearIndexCode, code_from_json, code_metrics,
                            code_to_json, decode_message, scalar_code,
                            time_share, verify_code)
from locindex.coloring import fractional_chromatic, fractional_coloring_code
from locindex.errors import CodeFormatError
from locindex.fieldmath import FieldSpec, GFMatrix
from locindex.graphs import interference_graph
from locindex.minrank import FittingMatrix, minrank, optimal_scalar_encoder
from locindex.schemes import ais_cover_code, t_subset_cover

F2 = FieldSpec(2)


def three_cycle_ingredients():
    g = directed_cycle(3)
    mat = GFMatrix.from_cols(F2, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    fitting = FittingMatrix(g, mat)
    encoder = mat.take_columns([0, 1])
    return g, fitting, encoder


def test_scalar_code_three_cycle_localities():
    g, fitting, encoder = three_cycle_ingredients()
    code = scalar_code(encoder, fitting)
    metrics = code_metrics(code)
    assert metrics.beta == 2
    assert metrics.per_receiver == (F(1), F(1), F(2))
    assert code.queries == ((0,), (1,), (0, 1))
    assert verify_code(code, g).valid


def test_scalar_code_identity_is_uncoded():
    g = edgeless(4)
    fitting = FittingMatrix(g, GFMatrix.identity(F2, 4))
    code = scalar_code(GFMatrix.identity(F2, 4), fitting)
    metrics = code_metrics(code)
    assert metrics.beta == 4
    assert metrics.locality == 1
    assert verify_code(code, g).valid


def test_scalar_code_five_cycle_max_locality():
    g = directed_cycle(5)
    value, fitting = minrank(g, F2)
    code = scalar_code(optimal_scalar_encoder(fitting), fitting)
    metrics = code_metrics(code)
    assert metrics.beta == 4
    assert metrics.locality == 4
    assert verify_code(code, g).valid


def test_scalar_code_rejects_wrong_column_space():
    g, fitting, _ = three_cycle_ingredients()
    with pytest.raises(ValueError):
        scalar_code(GFMatrix.zeros(F2, 3, 2), fitting)


def test_verify_accepts_paper_style_two_sum_code():
    # c1 = x1 + x2, c2 = x2 + x3
    g, fitting, encoder = three_cycle_ingredients()
    code = scalar_code(encoder, fitting)
    result = verify_code(code, g)
    assert result.valid
    assert result.backends == ("algebraic", "exhaustive")


def test_verify_flags_truncated_query_set():
    g, fitting, encoder = three_cycle_ingredients()
    good = scalar_code(encoder, fitting)
    bad = LinearIndexCode(
        F2, 3, 1, 2, good.encoder,
        (good.queries[0], good.queries[1], (0,)),
        (good.decoders[0], good.decoders[1],
         Decoder(GFMatrix.from_rows(F2, [[1]], ncols=1),
                 good.decoders[2].side_coeffs)),
        "broken")
    result = verify_code(bad, g)
    assert not result.valid
    assert result.failure.receiver == 2
    assert result.failure.kind == "undecodable"
    # the two returned messages really are indistinguishable for receiver 3
    msg = result.failure.message
    other = result.failure.conflicting
    word_a = bad.encoder.vec_mul(msg)
    word_b = bad.encoder.vec_mul(other)
    assert [word_a[t] for t in bad.queries[2]] == [word_b[t] for t in bad.queries[2]]
    assert msg[0] == other[0]  # side information of receiver 3 agrees
    assert msg[2] != other[2]


def test_verify_flags_wrong_decoder_coefficients():
    g, fitting, encoder = three_cycle_ingredients()
    good = scalar_code(encoder, fitting)
    flipped = Decoder(
        good.decoders[0].query_coeffs,
        GFMatrix.from_rows(F2, [[0]], ncols=1))  # drop the side-info cancel
    bad = LinearIndexCode(F2, 3, 1, 2, good.encoder, good.queries,
                          (flipped, good.decoders[1], good.decoders[2]), "broken")
    result = verify_code(bad, g)
    assert not result.valid
    assert result.failure.receiver == 0
    assert result.failure.kind == "decoder"
    decoded = decode_message(bad, g, result.failure.message)
    expected = result.failure.message[0:1]
    assert decoded[0] != tuple(expected)


def test_verify_rejects_graph_mismatch():
    g, fitting, encoder = three_cycle_ingredients()
    code = scalar_code(encoder, fitting)
    with pytest.raises(CodeFormatError):
        verify_code(code, directed_cycle(4))


def test_time_share_single_part_keeps_metrics():
    g, fitting, encoder = three_cycle_ingredients()
    code = scalar_code(encoder, fitting)
    shared = time_share(g, [(code, 1)])
    assert code_metrics(shared) == code_metrics(code)
    assert verify_code(shared, g).valid


def test_time_share_uncoded_with_ais_hits_seven_sixths():
    g, fitting, encoder = three_cycle_ingredients()
    _, witness = fractional_chromatic(interference_graph(g))
    uncoded = fractional_coloring_code(g, witness, F2)
    ais = ais_cover_code(g, t_subset_cover(g, 2), encoder, fitting)
    shared = time_share(g, [(uncoded, 3), (ais, 1)])
    metrics = code_metrics(shared)
    assert metrics.beta == F(5, 2)
    assert metrics.locality <= F(7, 6)
    assert verify_code(shared, g).valid


def test_time_share_copies_leave_metrics_alone():
    g, fitting, encoder = three_cycle_ingredients()
    code = scalar_code(encoder, fitting)
    for copies in (2, 3):
        shared = time_share(g, [(code, copies)])
        metrics = code_metrics(shared)
        assert metrics.beta == 2
        assert metrics.locality == 2
        assert verify_code(shared, g).valid


def test_time_share_mixture_is_convex_combination():
    g, fitting, encoder = three_cycle_ingredients()
    scalar = scalar_code(encoder, fitting)           # beta 2, r 2, m 1
    _, witness = fractional_chromatic(interference_graph(g))
    uncoded = fractional_coloring_code(g, witness, F2)  # beta 3, r 1, m 1
    shared = time_share(g, [(scalar, 1), (uncoded, 1)])
    metrics = code_metrics(shared)
    assert metrics.beta == F(5, 2)
    assert metrics.locality <= F(3, 2)
    assert verify_code(shared, g).valid


def test_time_share_rejects_mismatched_fields():
    g, fitting, encoder = three_cycle_ingredients()
    a = scalar_code(encoder, fitting)
    g3 = directed_cycle(3)
    _, fit3 = minrank(g3, FieldSpec(3))
    b = scalar_code(optimal_scalar_encoder(fit3), fit3)
    with pytest.raises(ValueError):
        time_share(g, [(a, 1), (b, 1)])


def test_code_metrics_examples():
    g, fitting, encoder = three_cycle_ingredients()
    scalar = scalar_code(encoder, fitting)
    assert code_metrics(scalar).beta == 2 and code_metrics(scalar).locality == 2
    ais = ais_cover_code(g, t_subset_cover(g, 2), encoder, fitting)
    assert code_metrics(ais) == code_metrics(ais).__class__(F(2), F(4, 3), (F(4, 3),) * 3)
    _, witness = fractional_chromatic(interference_graph(g))
    uncoded = fractional_coloring_code(g, witness, F2)
    assert code_metrics(uncoded).beta == 3 and code_metrics(uncoded).locality == 1


def test_metrics_bounds_hold_across_random_codes():
    rng = random.Random(23)
    for _ in range(12):
        g = random_graph(rng, rng.randint(1, 5), rng.choice([0.3, 0.7]))
        q = rng.choice([2, 3])
        _, fitting = minrank(g, FieldSpec(q))
        code = scalar_code(optimal_scalar_encoder(fitting), fitting)
        metrics = code_metrics(code)
        assert 1 <= metrics.locality <= metrics.beta


def test_backends_agree_on_small_codes():
    rng = random.Random(77)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 4), rng.choice([0.4, 0.8]))
        q = rng.choice([2, 3])
        _, fitting = minrank(g, FieldSpec(q))
        code = scalar_code(optimal_scalar_encoder(fitting), fitting)
        assert q ** (code.m * code.n) <= 1 << 16
        result = verify_code(code, g)
        assert result.valid and result.backends == ("algebraic", "exhaustive")


def test_json_round_trip():
    g, fitting, encoder = three_cycle_ingredients()
    code = scalar_code(encoder, fitting)
    text = code_to_json(code)
    back = code_from_json(text)
    assert back == code
    assert code_to_json(back) == text


def test_json_round_trip_vector_code():
    g, fitting, encoder = three_cycle_ingredients()
    ais = ais_cover_code(g, t_subset_cover(g, 2), encoder, fitting)
    back = code_from_json(code_to_json(ais))
    assert back == ais
    assert verify_code(back, g).valid


def test_json_rejects_malformed_documents():
    for text in ("{}", "[1,2]", '{"q":4,"n":1,"m":1,"len":1,"encoder":[[1]],'
                 '"queries":[[1]],"decoders":[{"query_coeffs":[[1]],"side_coeffs":[]}],'
                 '"provenance":""}',
                 "not json"):
        with pytest.raises(CodeFormatError):
            code_from_json(text)


def test_unqueried_position_rejected_at_construction():
    with pytest.raises(CodeFormatError):
        LinearIndexCode(
            F2, 1, 1, 2, GFMatrix.from_rows(F2, [[1, 1]], ncols=2),
            ((0,),),
            (Decoder(GFMatrix.from_rows(F2, [[1]], ncols=1),
                     GFMatrix.zeros(F2, 0, 1)),),
            "bad")
