import numpy as np
import pytest
from hypothesis import given, settings

from floodnet.graph import GraphSequence, GraphSnapshot, random_sequence, reverse_transpose
from floodnet.knowledge import run
from floodnet.oracle import (BoolMatrix, duality_check, equivalence_suite, fixed_cycle_matrix,
                             from_snapshot, matches_simulation, matrix_power,
                             product_reachability)
from floodnet.schedules import dp_path_schedule, fixed_cycle_schedule

from conftest import naive_flood, sequences


def test_from_snapshot_examples():
    assert from_snapshot(GraphSnapshot(3)) == BoolMatrix.identity(3)
    m = from_snapshot(GraphSnapshot(2, frozenset({(1, 2)})))
    assert m.bits.tolist() == [[True, True], [False, True]]


def test_fixed_cycle_matrix_n4():
    m = from_snapshot(fixed_cycle_schedule(4, 1).sequence[0])
    expected = np.zeros((4, 4), dtype=bool)
    for i in range(4):
        expected[i, i] = True
    for i in range(3):
        expected[i, i + 1] = True
    expected[3, 0] = True
    assert np.array_equal(m.bits, expected)
    assert m == fixed_cycle_matrix(4)


def test_diagonal_forced():
    assert BoolMatrix(2, np.zeros((2, 2), dtype=bool)).bits.tolist() == [[True, False], [False, True]]


def test_product_of_empty_snapshot_is_identity():
    assert product_reachability(GraphSequence.from_edge_sets(3, [[]])) == BoolMatrix.identity(3)
    assert product_reachability(GraphSequence(3)) == BoolMatrix.identity(3)


def test_fixed_cycle_powers_n5(backend):
    n = 5
    m = fixed_cycle_matrix(n)
    first_full = [k for k in range(n + 2) if matrix_power(m, k + 1).all_true()][0]
    assert first_full == n - 2


@settings(max_examples=120, deadline=None)
@given(sequences(max_n=9, max_len=6))
def test_product_matches_naive_flooding(seq):
    final_sets = naive_flood(seq.n, seq.edge_sets())[-1]
    prod = product_reachability(seq)
    for i in range(1, seq.n + 1):
        for j in range(1, seq.n + 1):
            assert prod[j, i] == (j in final_sets[i - 1])
    assert matches_simulation(seq)


@settings(max_examples=60, deadline=None)
@given(sequences(max_n=8, max_len=5))
def test_reverse_transpose_gives_transposed_product(seq):
    assert product_reachability(reverse_transpose(seq)) == product_reachability(seq).T


def test_random_sequences_match(backend):
    rng = np.random.default_rng(99)
    for n in range(2, 13):
        rep = equivalence_suite(n, 20, rng)
        assert rep.ok, rep


def test_duality_dp_schedule():
    seq = dp_path_schedule(5, 1).sequence
    assert product_reachability(seq).bits[0].all()
    assert duality_check(seq, 1)
    for q in range(1, 6):
        assert duality_check(seq, 1, q)


def test_duality_single_edge():
    assert duality_check(GraphSequence.from_edge_sets(2, [[(1, 2)]]), 1)
    assert duality_check(GraphSequence.from_edge_sets(2, [[(1, 2)]]), 2, 1)


@settings(max_examples=60, deadline=None)
@given(sequences(min_n=1, max_n=7, max_len=5))
def test_duality_always_holds(seq):
    for w in range(1, seq.n + 1):
        assert duality_check(seq, w)
        assert duality_check(seq, w, seq.n - w + 1)


def test_duality_rejects_bad_node():
    with pytest.raises(ValueError):
        duality_check(GraphSequence(3), 4)


def test_equivalence_report_summary():
    rep = equivalence_suite(4, 5, np.random.default_rng(0), steps=3)
    assert rep.summary() == "5/5 match" and rep.ok
