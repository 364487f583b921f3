import math

import numpy as np
import pytest

from floodnet.bounds import min_fks_time
from floodnet.cords import Cord, chi_cycle_check, verify_cord
from floodnet.graph import reverse_transpose
from floodnet.knowledge import is_fcs, is_fds, is_fks, run
from floodnet.oracle import duality_check, product_reachability
from floodnet.schedules import (RoundCertificate, Schedule, block_cycles, build_schedule,
                                cp_path_schedule, doubling_schedule, dp_path_schedule, eta,
                                eta_schedule, fixed_cycle_schedule, nu, nu_schedule, psi,
                                psi_schedule, random_schedule, verify_certificates,
                                SCHEDULE_NAMES)


def test_profiles_n8():
    assert [psi(8, k) for k in range(7)] == [8, 8, 8, 8, 4, 3, 2]
    assert [nu(8, k) for k in range(7)] == [2, 3, 4, 5, 8, 8, 8]
    assert [eta(8, k) for k in range(7)] == [2, 3, 4, 5, 4, 3, 2]


def test_profiles_odd_n():
    # ceil(9/2) - 1 = 4
    assert [psi(9, k) for k in range(8)] == [9, 9, 9, 9, 9, 4, 3, 2]
    assert [nu(9, k) for k in range(8)] == [2, 3, 4, 5, 6, 9, 9, 9]


def test_block_cycles():
    assert block_cycles(7, 3) == ((1, 2, 3), (4, 5, 6, 7))
    assert block_cycles(8, 8) == (tuple(range(1, 9)),)
    assert block_cycles(5, 2) == ((1, 2), (3, 4, 5))


@pytest.mark.parametrize("name", SCHEDULE_NAMES)
@pytest.mark.parametrize("n", [3, 4, 8, 9])
def test_every_schedule_certifies(name, n):
    sch = build_schedule(name, n, seed=3)
    assert verify_certificates(sch)


def test_broken_certificate_rejected():
    sch = psi_schedule(6)
    bad = Schedule(sch.name, sch.sequence,
                   (RoundCertificate(0, cycles=((1, 2, 3), (4, 5, 6)), chi=6),))
    assert not verify_certificates(bad)
    bad_cord = Schedule("x", sch.sequence, (RoundCertificate(0, cords=(Cord(1, (3,)),)),))
    assert not verify_certificates(bad_cord)


def test_dp_path_n2():
    sch = dp_path_schedule(2, 1)
    assert sch.sequence.edge_sets() == [frozenset({(1, 2)})]
    sch = dp_path_schedule(2, 2)
    assert sch.sequence.edge_sets() == [frozenset({(2, 1)})]


@pytest.mark.parametrize("n,w", [(5, 1), (7, 3), (6, 6)])
def test_dp_path_holder_counts(n, w):
    sch = dp_path_schedule(n, w)
    trace = run(sch.sequence)
    for k in range(n - 1):
        assert trace[k + 1].holders(w) == k + 2
        (cert,) = sch.certificates[k].cords
        assert cert.direction == "output" and len(cert) == k + 1
        assert verify_cord(cert, sch.sequence[k])
    assert is_fds(trace[-1], w)
    assert not any(is_fcs(s, w) for s in trace)


def test_cp_path_n2():
    assert cp_path_schedule(2, 1).sequence.edge_sets() == [frozenset({(2, 1)})]


@pytest.mark.parametrize("n,q", [(6, 6), (7, 2), (5, 1)])
def test_cp_path_collects(n, q):
    sch = cp_path_schedule(n, q)
    trace = run(sch.sequence)
    for k in range(n - 1):
        assert trace[k + 1].cardinalities[q - 1] == k + 2
        (cert,) = sch.certificates[k].cords
        assert len(cert) == n - k - 1 and verify_cord(cert, sch.sequence[k])
    assert is_fcs(trace[-1], q) and not is_fcs(trace[-2], q)


@pytest.mark.parametrize("n", [3, 6, 9])
def test_cp_reversed_is_dp_up_to_labels(n):
    cp = cp_path_schedule(n, n).sequence
    rev = reverse_transpose(cp)
    # node n collects under cp  <=>  node n disseminates under the reversal
    assert product_reachability(rev).bits[n - 1].all()
    trace = run(rev)
    for k in range(n - 1):
        assert trace[k + 1].holders(n) == k + 2
    # relabel: reversal of cp(n, n) is dp(n, n) with the other nodes reversed
    sigma = {n: n, **{v: n - v for v in range(1, n)}}
    relabelled = [frozenset((sigma[a], sigma[b]) for a, b in es) for es in rev.edge_sets()]
    assert relabelled == dp_path_schedule(n, n).sequence.edge_sets()
    assert duality_check(cp, n)


def test_psi_schedule_n8_structure():
    sch = psi_schedule(8)
    for k in range(4):
        assert sch.sequence[k].is_single_cycle()
    for k in range(4, 7):
        cert = sch.certificates[k]
        assert all(len(c) >= 8 - k for c in cert.cycles)
        assert chi_cycle_check(sch.sequence[k], 8 - k)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 9, 12, 15])
def test_chi_schedules_meet_their_profile(n):
    for sch, prof in ((psi_schedule(n), psi), (nu_schedule(n), nu), (eta_schedule(n), eta)):
        assert len(sch) == n - 1
        for k, g in enumerate(sch.sequence):
            assert chi_cycle_check(g, prof(n, k))


@pytest.mark.parametrize("n", [3, 5, 8, 11])
def test_psi_guarantee(n):
    trace = run(psi_schedule(n).sequence)
    for k in range(n - 1):
        assert trace[k + 1].cardinalities.min() >= k + 2
    assert is_fks(trace[-1])


def test_eta_n9_total():
    assert run(eta_schedule(9).sequence)[-1].total() == 81


def test_fixed_cycle_n2():
    sch = fixed_cycle_schedule(2)
    assert sch.sequence.edge_sets() == [frozenset({(1, 2), (2, 1)})]
    trace = run(sch.sequence)
    assert not is_fks(trace[0]) and is_fks(trace[1])


@pytest.mark.parametrize("n", [3, 6, 10])
def test_fixed_cycle_interval_growth(n):
    trace = run(fixed_cycle_schedule(n, steps=n + 2).sequence)
    for s in trace:
        assert s.cardinalities.tolist() == [min(s.round + 1, n)] * n


@pytest.mark.parametrize("n,expected", [(2, 1), (7, 3), (8, 3), (16, 4), (31, 5), (33, 6)])
def test_doubling(n, expected):
    sch = doubling_schedule(n)
    trace = run(sch.sequence)
    assert len(sch) == expected == min_fks_time(n)
    for s in trace:
        assert s.cardinalities.tolist() == [min(2 ** s.round, n)] * n
    assert is_fks(trace[-1])
    assert not any(is_fks(s) for s in trace[:-1])


def test_doubling_odd_is_hamiltonian():
    assert all(g.is_single_cycle() for g in doubling_schedule(7).sequence)


def test_doubling_even_splits():
    g = doubling_schedule(8).sequence[1]  # shift 2 on 8 nodes
    assert not g.is_single_cycle()


def test_random_schedule_reproducible():
    a, b = random_schedule(6, seed=5), random_schedule(6, seed=5)
    assert a.sequence == b.sequence and a.params["seed"] == 5


def test_unknown_schedule():
    with pytest.raises(ValueError):
        build_schedule("spiral", 5)


def test_schedule_json_dict():
    d = dp_path_schedule(3).to_json_dict()
    assert d["n"] == 3 and d["name"] == "dp_path"
    assert d["rounds"] == [[[1, 2]], [[1, 2], [2, 3]]]
    assert d["certificates"][1]["cords"][0] == {"target": 1, "nodes": [3, 2],
                                                "direction": "output", "closed": False}
