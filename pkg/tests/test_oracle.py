"""Exact verification machinery: enumeration, rate matrices, balance checks.

The frozen matrices and measures in this file were derived by hand from
the two- and three-state birth-death chains with Barker weights
g(t) = t / (1 + t):

    three-state weights (0.2, 0.5, 0.3):
        rates   0->1: g(2.5) = 5/7     1->0: g(0.4) = 2/7
                1->2: g(0.6) = 3/8     2->1: g(5/3) = 5/8
        jump measure  pi_J = (8/37, 1/2, 21/74)

    two-state weights (1, 2), one inverse pair, lifted chain:
        (0,+) -2/3-> (1,+) -1/3-> (1,-) -1/3-> (0,-) -2/3-> (0,+)
"""

import math

import numpy as np
import pytest

from jumpmc import balancing, oracle
from jumpmc.errors import DomainError, ReducibleChainError
from jumpmc.models.spin import SpinSystem
from jumpmc.models.tabular import TabularTarget

BARKER = balancing.get("barker")


# ------------------------------------------------------------- enumeration


def test_enumerated_space_sizes(path3, spin4):
    assert oracle.enumerate_space("zanella", path3).size == 3
    assert oracle.enumerate_space("dzz", path3).size == 6
    assert oracle.enumerate_space("dcs", path3).size == 12
    assert oracle.enumerate_space("zanella", spin4).size == 16
    assert oracle.enumerate_space("tabu", spin4).size == 512
    assert oracle.enumerate_space("dzz", spin4).size == 256
    assert oracle.enumerate_space("dcs", spin4).size == 128


def test_reference_is_normalized(path3, spin4):
    for kind, target in (
        ("zanella", path3),
        ("dzz", path3),
        ("dcs", path3),
        ("tabu", spin4),
    ):
        sp = oracle.enumerate_space(kind, target)
        assert sp.reference.sum() == pytest.approx(1.0, abs=1e-12)
        marg = sp.x_marginal(sp.reference)
        np.testing.assert_allclose(marg, sp.base_probs, atol=1e-12)


def test_size_cap_respected(spin4):
    from jumpmc.errors import SizeCapError

    with pytest.raises(SizeCapError):
        oracle.enumerate_space("tabu", spin4, size_cap=100)


# ------------------------------------------------------------- rate matrices


def test_zanella_rate_matrix_on_path3(path3):
    sp = oracle.enumerate_space("zanella", path3)
    Q = oracle.build_rate_matrix(sp, BARKER)
    expect = np.array(
        [
            [-5 / 7, 5 / 7, 0.0],
            [2 / 7, -(2 / 7 + 3 / 8), 3 / 8],
            [0.0, 5 / 8, -5 / 8],
        ]
    )
    np.testing.assert_allclose(Q, expect, atol=1e-14)


def test_dzz_rate_matrix_is_the_lifted_cycle(two_state):
    sp = oracle.enumerate_space("dzz", two_state)
    assert sp.rows == [(0, (1,)), (0, (-1,)), (1, (1,)), (1, (-1,))]
    Q = oracle.build_rate_matrix(sp, BARKER)
    expect = np.array(
        [
            [-2 / 3, 0.0, 2 / 3, 0.0],
            [2 / 3, -2 / 3, 0.0, 0.0],
            [0.0, 0.0, -1 / 3, 1 / 3],
            [0.0, 1 / 3, 0.0, -1 / 3],
        ]
    )
    np.testing.assert_allclose(Q, expect, atol=1e-14)


def test_dzz_single_pair_equals_full_matrix_when_one_pair(two_state):
    sp = oracle.enumerate_space("dzz", two_state)
    full = oracle.build_rate_matrix(sp, BARKER)
    single = oracle.single_pair_rate_matrix(sp, BARKER, sp.pair_gids[0])
    np.testing.assert_allclose(full, single, atol=1e-15)


def test_compensator_removal_empties_flip_edges(two_state):
    sp = oracle.enumerate_space("dzz", two_state)
    Q = oracle.build_rate_matrix(sp, BARKER, include_compensators=False)
    # The two theta-flip edges disappear; the jump edges stay.
    assert Q[1, 0] == 0.0 and Q[2, 3] == 0.0
    assert Q[0, 2] == pytest.approx(2 / 3)
    assert Q[3, 1] == pytest.approx(1 / 3)


def test_rows_sum_to_zero(path3, spin4):
    for kind, target in (("dcs", path3), ("tabu", spin4)):
        sp = oracle.enumerate_space(kind, target)
        Q = oracle.build_rate_matrix(sp, BARKER)
        np.testing.assert_allclose(Q.sum(axis=1), 0.0, atol=1e-12)
        off = Q - np.diag(np.diag(Q))
        assert (off >= 0).all()


# ------------------------------------------------------------- stationary laws


def test_stationary_distribution_two_state():
    Q = np.array([[-2 / 3, 2 / 3], [1 / 3, -1 / 3]])
    pi = oracle.stationary_distribution(Q)
    np.testing.assert_allclose(pi, [1 / 3, 2 / 3], atol=1e-12)
    res = oracle.check_stationarity(Q, pi)
    assert res.passed


def test_stationarity_check_rejects_wrong_law():
    Q = np.array([[-2 / 3, 2 / 3], [1 / 3, -1 / 3]])
    res = oracle.check_stationarity(Q, np.array([0.5, 0.5]))
    assert not res.passed
    assert res.max_violation > 1e-3


def test_detailed_balance_two_state():
    Q = np.array([[-2 / 3, 2 / 3], [1 / 3, -1 / 3]])
    res = oracle.check_detailed_balance(Q, np.array([1 / 3, 2 / 3]))
    assert res.passed


def test_reducible_chain_assembles_with_reference():
    # Two frozen blocks; the reference weights decide the mixture.
    Q = np.array(
        [
            [-1.0, 1.0, 0.0, 0.0],
            [2.0, -2.0, 0.0, 0.0],
            [0.0, 0.0, -3.0, 3.0],
            [0.0, 0.0, 1.0, -1.0],
        ]
    )
    ref = np.array([0.2, 0.1, 0.4, 0.3])
    pi = oracle.stationary_distribution(Q, reference=ref)
    # Block one: (2/3, 1/3) of mass 0.3; block two: (1/4, 3/4) of mass 0.7.
    np.testing.assert_allclose(pi, [0.2, 0.1, 0.175, 0.525], atol=1e-12)


def test_reducible_chain_without_reference_raises():
    Q = np.zeros((2, 2))
    with pytest.raises(ReducibleChainError):
        oracle.stationary_distribution(Q)


def test_transient_states_raise():
    Q = np.array([[-1.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ReducibleChainError):
        oracle.stationary_distribution(Q, reference=np.array([0.5, 0.5]))


def test_closed_classes_split():
    Q = np.array([[-1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [1.0, 0.0, -1.0]])
    closed, open_ = oracle.closed_classes(Q)
    assert sorted(sorted(c) for c in closed) == [[0, 1]]
    assert sorted(sorted(c) for c in open_) == [[2]]


# ------------------------------------------------------------- jump measure


def test_jump_measure_against_hand_values(path3):
    _, pi_j, _ = oracle.jump_measure(path3, BARKER)
    np.testing.assert_allclose(pi_j, [8 / 37, 0.5, 21 / 74], atol=1e-14)


def test_jump_measure_global_is_uniform_on_path3(path3):
    # With g(t) = t the jump measure weights each state by the total mass
    # of its neighbours, which is 0.5 everywhere on this chain.
    _, pi_j, _ = oracle.jump_measure(path3, balancing.get("global"))
    np.testing.assert_allclose(pi_j, [1 / 3, 1 / 3, 1 / 3], atol=1e-14)


# ------------------------------------------------------------- full verification


@pytest.mark.parametrize("kind", ["zanella", "dzz", "dcs"])
def test_verify_sampler_path3(path3, kind):
    results = oracle.verify_sampler(kind, path3, BARKER)
    for r in results:
        assert r.passed, str(r)


@pytest.mark.parametrize("kind", ["zanella", "tabu", "dzz", "dcs"])
def test_verify_sampler_spin4(spin4, kind):
    results = oracle.verify_sampler(kind, spin4, BARKER)
    for r in results:
        assert r.passed, str(r)


def test_verify_reports_reducibility(spin4):
    results = oracle.verify_sampler("tabu", spin4, BARKER)
    names = [r.name for r in results]
    assert "reducibility" in names
    aux = {r.name: r for r in results}["aux_uniformity"]
    assert aux.passed


def test_negative_control_tabu(spin4):
    results = oracle.verify_sampler(
        "tabu", spin4, BARKER, include_compensators=False
    )
    by_name = {r.name: r for r in results}
    assert not by_name["reference_stationarity"].passed
    assert not by_name["semi_local_balance"].passed
    # The parts that do not depend on the compensator still hold.
    assert by_name["measure_symmetry"].passed
    assert by_name["skew_pair"].passed


def test_negative_control_dzz_on_path(path3):
    results = oracle.verify_sampler(
        "dzz", path3, BARKER, include_compensators=False
    )
    by_name = {}
    for r in results:
        by_name.setdefault(r.name, r)
    assert not by_name["reference_stationarity"].passed
    failed_semi = [
        r for r in results if r.name.endswith("semi_local_balance") and not r.passed
    ]
    assert failed_semi, "dropping compensators must break semi-local balance"


def test_negative_control_dcs_on_path(path3):
    results = oracle.verify_sampler(
        "dcs", path3, BARKER, include_compensators=False
    )
    by_name = {r.name: r for r in results}
    assert not by_name["reference_stationarity"].passed


# ------------------------------------------------------------- helper checks


def test_generator_expectation_vanishes_at_stationarity(path3, rng):
    sp = oracle.enumerate_space("zanella", path3)
    Q = oracle.build_rate_matrix(sp, BARKER)
    pi = sp.reference
    for _ in range(20):
        f = rng.normal(size=sp.size)
        assert abs(oracle.generator_expectation(Q, pi, f)) <= 1e-12
    # A non-stationary law gives a nonzero drift for some test function.
    uniform = np.full(sp.size, 1.0 / sp.size)
    drifts = [
        abs(oracle.generator_expectation(Q, uniform, rng.normal(size=sp.size)))
        for _ in range(20)
    ]
    assert max(drifts) > 1e-3


def test_skew_check_validates_involution(two_state):
    sp = oracle.enumerate_space("dzz", two_state)
    Q = oracle.build_rate_matrix(sp, BARKER)
    bad = np.array([1, 2, 3, 0])  # not an involution
    with pytest.raises(DomainError):
        oracle.check_skew_detailed_balance(Q, sp.reference, bad)


def test_check_result_formatting():
    r = oracle.CheckResult("demo", True, 1e-16, 4, "context")
    assert "[pass]" in str(r)
    r = oracle.CheckResult("demo", False, 0.5, 4, "context")
    assert "[FAIL]" in str(r)


def test_zero_density_base_states_are_dropped():
    # A zero-probability state never enters the enumerated space.
    from jumpmc.statespace import Target, plus_minus_generators

    class Holed(Target):
        statistic_name = "value"

        def __init__(self):
            self.generators = plus_minus_generators(1)
            self.name = "holed"
            self.weights = np.array([1.0, 0.0, 2.0, 1.0])

        def log_density(self, x):
            w = self.weights[int(x) % 4]
            return float(np.log(w)) if w > 0 else -math.inf

        def apply(self, gid, x):
            return (int(x) + (1 if gid == 0 else -1)) % 4

        def initial_state(self, rng=None):
            return 0

        def enumerate_states(self):
            return list(range(4))

    sp = oracle.enumerate_space("zanella", Holed())
    assert sp.size == 3
    assert 1 not in list(sp.base_states)
