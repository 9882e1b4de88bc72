"""Model zoo: each target's derived ratio formulas against brute-force oracles.

Every model gets (a) a consistency sweep comparing ``log_ratio`` with the
plain density difference on random states and (b) model-specific checks
against values computed here from first principles, independently of the
package's vectorized or cached shortcuts.
"""

import itertools
import math

import numpy as np
import pytest
from scipy import integrate, stats

from jumpmc.errors import ConfigError, DomainError
from jumpmc.models import registry, tabular
from jumpmc.models.bvs import BayesianVariableSelection
from jumpmc.models.dpp import DeterminantalPointProcess
from jumpmc.models.facility import FacilityTarget
from jumpmc.models.gauge import GaugeField
from jumpmc.models.lattice_gaussian import LatticeGaussian
from jumpmc.models.permutation import PermutationTarget
from jumpmc.models.spin import SpinSystem
from jumpmc.models.tabular import TabularTarget, beta_binomial_target, three_state_path


def ratio_sweep(target, states, tol=1e-10):
    """Compare log_ratio and the vectorized log_ratios with density differences."""
    worst = 0.0
    for x in states:
        vec = target.log_ratios(x)
        for k, gen in enumerate(target.generators):
            y = target.apply(gen.gid, x)
            direct = target.log_density(y) - target.log_density(x)
            single = target.log_ratio(x, gen.gid)
            for val in (single, float(vec[k])):
                if direct == -math.inf or val == -math.inf:
                    assert direct == val == -math.inf
                else:
                    worst = max(worst, abs(val - direct))
    assert worst <= tol, f"worst ratio deviation {worst}"


# ---------------------------------------------------------------- tabular


def test_path3_weights(path3):
    np.testing.assert_allclose(path3.probabilities(), [0.2, 0.5, 0.3], atol=1e-15)
    assert path3.name == "path3"


def test_tabular_boundaries(path3):
    assert path3.log_ratio(0, tabular.STEP_DOWN) == -math.inf
    assert path3.log_ratio(2, tabular.STEP_UP) == -math.inf
    assert path3.log_ratio(1, tabular.STEP_DOWN) == pytest.approx(np.log(0.4))


def test_tabular_ratio_sweep(path3):
    ratio_sweep(path3, range(3))


def test_beta_binomial_matches_scipy():
    t = beta_binomial_target(n=50, a=10.0, b=20.0)
    probs = t.probabilities()
    expect = stats.betabinom.pmf(np.arange(50), 49, 10.0, 20.0)
    np.testing.assert_allclose(probs, expect, rtol=1e-12)
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_tabular_rejects_bad_weights():
    with pytest.raises(DomainError):
        TabularTarget([0.0])  # single state leaves no moves
    with pytest.raises(DomainError):
        TabularTarget([math.nan, 0.0])


def test_tabular_statistic_is_state_index(path3):
    assert path3.statistic(2) == 2.0


# ---------------------------------------------------------------- spin


def brute_spin_log_density(J, h, x):
    n = len(x)
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += x[i] * J[i, j] * x[j]
    return total / n + h * sum(x)


def test_spin_density_formula(rng):
    t = SpinSystem.random_instance(6, interaction_scale=1.3, field=0.2, seed=11)
    for _ in range(10):
        x = rng.choice([-1, 1], size=6)
        expect = brute_spin_log_density(t.couplings, t.field, x)
        assert t.log_density(x) == pytest.approx(expect, abs=1e-12)


def test_spin_ratio_sweep(rng):
    t = SpinSystem.random_instance(6, interaction_scale=1.3, field=0.2, seed=11)
    states = [rng.choice([-1, 1], size=6) for _ in range(10)]
    ratio_sweep(t, states)


def test_spin_zero_coupling_ratio_is_field_only():
    t = SpinSystem(np.zeros((3, 3)), field=0.7)
    x = np.array([1, -1, 1])
    # Flipping spin k changes h * sum(x) by -2 h x_k and nothing else.
    assert t.log_ratio(x, 0) == pytest.approx(-1.4)
    assert t.log_ratio(x, 1) == pytest.approx(1.4)


def test_spin_global_flip_symmetry_at_zero_field(spin4, rng):
    for _ in range(5):
        x = rng.choice([-1, 1], size=4)
        assert spin4.log_density(x) == pytest.approx(
            spin4.log_density(-x), abs=1e-12
        )


def test_spin_cache_stays_consistent_after_many_moves(rng):
    t = SpinSystem.random_instance(12, interaction_scale=2.0, field=0.1, seed=5)
    x = t.initial_state()
    cache = t.make_cache(x)
    for _ in range(1000):
        gid = int(rng.integers(12))
        y = t.apply(gid, x)
        cache = t.advance_cache(cache, gid, x, y)
        x = y
    assert t.check_cache(cache, x) <= 1e-8


def test_spin_validation():
    with pytest.raises(DomainError):
        SpinSystem(np.array([[0.0, 1.0], [2.0, 0.0]]))  # not symmetric
    with pytest.raises(DomainError):
        SpinSystem(np.array([[1.0, 0.5], [0.5, 0.0]]))  # nonzero diagonal
    with pytest.raises(DomainError):
        SpinSystem(np.zeros((2, 2)), field=-0.1)


def test_spin_enumeration_size():
    t = SpinSystem.random_instance(5, seed=0)
    states = t.enumerate_states()
    assert len(states) == 32
    keys = {t.state_key(s) for s in states}
    assert len(keys) == 32


# ---------------------------------------------------------------- lattice Gaussian


def test_lattice_density_value():
    t = LatticeGaussian(dim=3, scale=500.0)
    z = np.array([1000, 1000, 1000])
    assert t.log_density(z) == pytest.approx(-np.pi * 3e6 / 25e4, rel=1e-14)
    assert t.log_density(np.zeros(3, dtype=int)) == 0.0


def test_lattice_ratio_sweep(rng):
    t = LatticeGaussian(dim=3, scale=2.5)
    states = [rng.integers(-4, 5, size=3) for _ in range(10)]
    ratio_sweep(t, states)


def test_lattice_nontrivial_basis(rng):
    B = np.array([[1.0, 0.6], [0.0, 0.8]])
    t = LatticeGaussian(basis=B, scale=1.5)
    states = [rng.integers(-3, 4, size=2) for _ in range(10)]
    ratio_sweep(t, states)
    z = np.array([2, -1])
    expect = -np.pi * float((B @ z) @ (B @ z)) / 1.5**2
    assert t.log_density(z) == pytest.approx(expect, rel=1e-13)


def test_lattice_window_blocks_exits():
    t = LatticeGaussian(dim=1, scale=3.0, window=(-2, 2))
    edge = np.array([2])
    up, down = t.log_ratios(edge)
    assert up == -math.inf
    assert np.isfinite(down)
    assert t.log_density(np.array([3])) == -math.inf


def test_lattice_window_enumeration():
    t = LatticeGaussian(dim=2, scale=1.0, window=(-1, 1))
    states = t.enumerate_states()
    assert len(states) == 9


def test_lattice_cache_advance(rng):
    t = LatticeGaussian(dim=4, scale=2.0)
    x = np.zeros(4, dtype=int)
    cache = t.make_cache(x)
    for _ in range(200):
        gid = int(rng.integers(8))
        y = t.apply(gid, x)
        cache = t.advance_cache(cache, gid, x, y)
        x = y
    assert t.check_cache(cache, x) <= 1e-9


# ---------------------------------------------------------------- gauge field


def brute_gauge_log_density(shape, modulus, beta, x):
    """Plaquette action computed with explicit index arithmetic."""
    nx, ny = shape
    n_h = (nx - 1) * ny

    def h_edge(i, j):
        return i * ny + j

    def v_edge(i, j):
        return n_h + i * (ny - 1) + j

    total = 0.0
    for i in range(nx - 1):
        for j in range(ny - 1):
            sigma = (
                x[h_edge(i, j)]
                + x[h_edge(i, j + 1)]
                + x[v_edge(i, j)]
                + x[v_edge(i + 1, j)]
            )
            total += 1.0 - math.cos(2.0 * math.pi * sigma / modulus)
    return -beta * total


def test_gauge_counts():
    t = GaugeField(shape=(4, 4), modulus=53)
    assert t.n_edges == 24
    assert t.n_plaquettes == 9
    assert len(t.generators) == 48


def test_gauge_density_against_brute_force(rng):
    t = GaugeField(shape=(3, 4), modulus=7, beta=1.3)
    for _ in range(10):
        x = rng.integers(0, 7, size=t.n_edges)
        expect = brute_gauge_log_density((3, 4), 7, 1.3, x)
        assert t.log_density(x) == pytest.approx(expect, abs=1e-12)


def test_gauge_ratio_sweep(rng):
    t = GaugeField(shape=(3, 3), modulus=5, beta=0.8)
    states = [rng.integers(0, 5, size=t.n_edges) for _ in range(6)]
    ratio_sweep(t, states)


def test_gauge_wraparound_keeps_cache_exact():
    t = GaugeField(shape=(3, 3), modulus=5, beta=1.0)
    x = np.full(t.n_edges, 4)  # every increment wraps to 0
    cache = t.make_cache(x)
    y = t.apply(0, x)
    assert y[0] == 0
    cache = t.advance_cache(cache, 0, x, y)
    # The stored plaquette sums may differ from a fresh computation by a
    # multiple of the modulus; the cosine action must not notice.
    assert t.check_cache(cache, y) <= 1e-12


def test_gauge_cache_long_run(rng):
    t = GaugeField(shape=(3, 3), modulus=5, beta=1.0)
    x = t.initial_state()
    cache = t.make_cache(x)
    for _ in range(500):
        gid = int(rng.integers(len(t.generators)))
        y = t.apply(gid, x)
        cache = t.advance_cache(cache, gid, x, y)
        x = y
    assert t.check_cache(cache, x) <= 1e-10


def test_gauge_circle_coordinates():
    t = GaugeField(shape=(3, 3), modulus=4)
    x = t.initial_state()
    x[2] = 1  # quarter turn
    c, s = t.circle_coordinates(x, edge=2)
    assert c == pytest.approx(0.0, abs=1e-12)
    assert s == pytest.approx(1.0, abs=1e-12)


def test_gauge_enumeration_small():
    t = GaugeField(shape=(2, 2), modulus=3)
    assert t.n_edges == 4
    states = t.enumerate_states()
    assert len(states) == 81


# ---------------------------------------------------------------- permutation


def test_permutation_ratio_sweep(rng):
    t = PermutationTarget.random_instance(5, seed=2)
    states = [rng.permutation(5) for _ in range(10)]
    ratio_sweep(t, states)


def test_permutation_transpositions_are_unordered():
    t = PermutationTarget.random_instance(4, seed=0)
    assert len(t.generators) == 6  # C(4, 2) unordered pairs
    assert t.generators.all_involutions


def test_permutation_mode_matches_enumeration():
    t = PermutationTarget.random_instance(5, seed=7)
    best = max(t.enumerate_states(), key=t.log_density)
    assert t.statistic(best) == 0.0
    # No other permutation reaches the mode's density.
    mode_ld = t.log_density(best)
    for s in t.enumerate_states():
        if not np.array_equal(s, best):
            assert t.log_density(s) < mode_ld


def test_permutation_statistic_counts_displacements():
    t = PermutationTarget(np.zeros((3, 3)))
    # Flat weights: the mode resolves to some fixed permutation; moving one
    # transposition away changes the Hamming distance by exactly 2.
    x = t.initial_state()
    gid = t.generators.gids[0]
    y = t.apply(gid, x)
    assert abs(t.statistic(y) - t.statistic(x)) == 2.0


def test_permutation_validation():
    t = PermutationTarget.random_instance(4, seed=0)
    with pytest.raises(DomainError):
        t.validate_state(np.array([0, 0, 1, 2]))
    t.validate_state(np.array([3, 2, 1, 0]))
    with pytest.raises(DomainError):
        PermutationTarget(np.array([[0.0, np.inf], [0.0, 0.0]]))


# ---------------------------------------------------------------- facility


def brute_facility_log_density(model, x):
    """Coverage minus costs, computed with plain loops."""
    open_sites = [s for s in range(model.n_sites) if x[s] == 1]
    if not open_sites:
        return 0.0
    coverage = 0.0
    loads = [0] * model.n_sites
    for u in range(model.n_users):
        best, best_u = None, -math.inf
        for s in open_sites:  # ascending order resolves ties to the lowest id
            if model.utility[s, u] > best_u:
                best, best_u = s, model.utility[s, u]
        coverage += best_u
        loads[best] += 1
    overload = sum(max(0, loads[s] - model.capacity) for s in range(model.n_sites))
    return (
        coverage
        - model.cost_install * len(open_sites)
        - model.cost_overload * overload
    )


@pytest.fixture
def small_facility():
    return FacilityTarget.synthesize(
        n_sites=4, n_users=9, seed=8, capacity=3, cost_overload=0.7
    )


def test_facility_empty_configuration(small_facility):
    assert small_facility.log_density(np.zeros(4, dtype=np.int8)) == 0.0


def test_facility_all_subsets_against_brute_force(small_facility):
    t = small_facility
    for bits in itertools.product([0, 1], repeat=4):
        x = np.array(bits, dtype=np.int8)
        assert t.log_density(x) == pytest.approx(
            brute_facility_log_density(t, x), abs=1e-12
        )


def test_facility_overload_hand_value():
    sites = np.array([[0.0, 0.0], [5.0, 0.0]])
    users = np.array([[0.1, 0.0], [-0.1, 0.0]])
    t = FacilityTarget(sites, users, kappa=0.5, cost_install=0.25,
                       cost_overload=0.4, capacity=1)
    x = np.array([1, 0], dtype=np.int8)
    cover = math.exp(-0.5 * 0.1**2) * 2
    expect = cover - 0.25 - 0.4 * 1  # both users at site 0, one over capacity
    assert t.log_density(x) == pytest.approx(expect, abs=1e-12)


def test_facility_tie_breaks_to_lowest_site():
    # Two sites equidistant from the user: the load lands on site 0.
    sites = np.array([[-1.0, 0.0], [1.0, 0.0]])
    users = np.array([[0.0, 0.0]])
    t = FacilityTarget(sites, users, capacity=5)
    loads = t.loads(np.array([1, 1], dtype=np.int8))
    assert loads[0] == 1 and loads[1] == 0


def test_facility_ratio_sweep(small_facility, rng):
    states = [rng.integers(0, 2, size=4).astype(np.int8) for _ in range(12)]
    ratio_sweep(small_facility, states)


def test_facility_synthesize_geometry():
    t = FacilityTarget.synthesize(n_sites=10, n_users=40, seed=3)
    assert t.users.shape == (40, 2)
    inside = (
        (t.users[:, 0] >= 0) & (t.users[:, 0] <= 10)
        & (t.users[:, 1] >= 0) & (t.users[:, 1] <= 6)
    )
    assert inside.all()
    # The notch region holds no users.
    in_notch = (
        (t.users[:, 0] >= 4) & (t.users[:, 0] <= 7) & (t.users[:, 1] <= 2.5)
    )
    assert not in_notch.any()


# ---------------------------------------------------------------- determinantal


def test_dpp_log_density_values():
    K = np.array([[2.0, 0.3], [0.3, 1.5]])
    t = DeterminantalPointProcess(K)
    assert t.log_density(np.array([0, 0], dtype=np.int8)) == 0.0
    assert t.log_density(np.array([1, 0], dtype=np.int8)) == pytest.approx(
        math.log(2.0)
    )
    both = np.array([1, 1], dtype=np.int8)
    assert t.log_density(both) == pytest.approx(math.log(2.0 * 1.5 - 0.09))


def test_dpp_ratio_fast_path_matches_density(rng):
    # Short lengthscale keeps the kernel minors well conditioned; the
    # near-singular regime is covered separately below.
    t = DeterminantalPointProcess.random_points(9, seed=4, lengthscale=0.15)
    for _ in range(12):
        x = (rng.random(9) < 0.4).astype(np.int8)
        cache = t.make_cache(x)
        vec = t.log_ratios(x, cache)
        for k, gen in enumerate(t.generators):
            y = t.apply(gen.gid, x)
            direct = t.log_density(y) - t.log_density(x)
            if direct == -math.inf or vec[k] == -math.inf:
                assert direct == vec[k] == -math.inf
            else:
                assert vec[k] == pytest.approx(direct, abs=1e-8)


def test_dpp_cache_advance(rng):
    t = DeterminantalPointProcess.random_points(8, seed=1, lengthscale=0.6)
    x = np.zeros(8, dtype=np.int8)
    cache = t.make_cache(x)
    for _ in range(200):
        gid = int(rng.integers(8))
        y = t.apply(gid, x)
        if t.log_density(y) == -math.inf:
            continue
        cache = t.advance_cache(cache, gid, x, y)
        x = y
    assert t.check_cache(cache, x) <= 1e-8


def test_dpp_expected_size_matches_enumeration():
    t = DeterminantalPointProcess.random_points(7, seed=2, lengthscale=0.5)
    states = t.enumerate_states()
    lds = np.array([t.log_density(s) for s in states])
    sizes = np.array([s.sum() for s in states], dtype=float)
    probs = np.exp(lds - lds.max())
    probs /= probs.sum()
    assert t.expected_size() == pytest.approx(float(probs @ sizes), abs=1e-10)


def test_dpp_near_duplicate_points_block_joint_inclusion():
    pts = np.array([[0.5, 0.5], [0.5, 0.5], [0.1, 0.9]])
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
    K = np.exp(-0.5 * d2 / 0.3**2)
    t = DeterminantalPointProcess(K)
    # Items 0 and 1 are identical, so their joint minor is singular.
    assert t.log_density(np.array([1, 1, 0], dtype=np.int8)) == -math.inf
    x = np.array([1, 0, 0], dtype=np.int8)
    vec = t.log_ratios(x, t.make_cache(x))
    assert vec[1] == -math.inf


def test_subset_models_tolerate_integer_states():
    # Boolean vectors are the canonical subset encoding, but 0/1 integer
    # arrays must not be silently corrupted by the toggle move.
    t = DeterminantalPointProcess.random_points(5, seed=0, lengthscale=0.2)
    xb = np.array([True, False, True, False, False])
    xi = xb.astype(np.int8)
    yb, yi = t.apply(0, xb), t.apply(0, xi)
    assert yb[0] == yi[0] == 0
    assert t.log_density(xb) == t.log_density(xi)
    np.testing.assert_allclose(t.log_ratios(xb), t.log_ratios(xi))


def test_dpp_requires_symmetric_kernel():
    with pytest.raises(DomainError):
        DeterminantalPointProcess(np.array([[1.0, 0.2], [0.1, 1.0]]))


# ---------------------------------------------------------------- variable selection


def tiny_bvs():
    Z = np.array([[1.0, 0.5], [-0.7, 1.2], [0.3, -0.4]])
    y = np.array([0.8, -0.2, 0.5])
    return BayesianVariableSelection(
        Z, y, coef_scale=1.7, prior_df=4.0, prior_scale=1.3, inclusion_prob=0.3
    )


def bvs_marginal_via_t(model, x):
    """Student-t representation of the integrated likelihood."""
    cols = np.flatnonzero(x)
    Zx = model.design[:, cols]
    M = np.eye(model.n_obs) + model.coef_scale**2 * (Zx @ Zx.T)
    return float(
        stats.multivariate_t(
            loc=np.zeros(model.n_obs),
            shape=model.prior_scale * M,
            df=model.prior_df,
        ).logpdf(model.response)
    )


def bvs_marginal_via_quadrature(model, x):
    """Integrate the variance parameter numerically."""
    cols = np.flatnonzero(x)
    Zx = model.design[:, cols]
    M = np.eye(model.n_obs) + model.coef_scale**2 * (Zx @ Zx.T)
    sign, logdet = np.linalg.slogdet(M)
    assert sign > 0
    quad = float(model.response @ np.linalg.solve(M, model.response))
    a = model.prior_df / 2.0
    b = model.prior_df * model.prior_scale / 2.0
    m = model.n_obs

    def integrand(s):
        return (
            stats.invgamma.pdf(s, a, scale=b)
            * (2.0 * math.pi * s) ** (-m / 2.0)
            * math.exp(-quad / (2.0 * s))
        )

    val, err = integrate.quad(
        integrand, 0.0, np.inf, limit=400, epsabs=1e-14, epsrel=1e-11
    )
    assert err <= 1e-8 * val
    return math.log(val) - 0.5 * logdet


@pytest.mark.parametrize("bits", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_bvs_marginal_against_t_representation(bits):
    t = tiny_bvs()
    x = np.array(bits, dtype=np.int8)
    assert t.log_marginal(x) == pytest.approx(
        bvs_marginal_via_t(t, x), abs=1e-10
    )


@pytest.mark.parametrize("bits", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_bvs_marginal_against_quadrature(bits):
    t = tiny_bvs()
    x = np.array(bits, dtype=np.int8)
    closed = t.log_marginal(x)
    numeric = bvs_marginal_via_quadrature(t, x)
    assert closed == pytest.approx(numeric, rel=1e-6, abs=1e-6)


def test_bvs_prior_term():
    t = tiny_bvs()
    x = np.array([1, 0], dtype=np.int8)
    q = 0.3
    expect = t.log_marginal(x) + math.log(q) + math.log(1 - q)
    assert t.log_density(x) == pytest.approx(expect, abs=1e-12)


def test_bvs_ratio_sweep(rng):
    t = BayesianVariableSelection.synthesize(
        n_predictors=6, n_obs=15, n_active=2, seed=9
    )
    states = [(rng.random(6) < 0.5).astype(np.int8) for _ in range(10)]
    ratio_sweep(t, states, tol=1e-9)


def test_bvs_from_csv(tmp_path):
    rng = np.random.default_rng(0)
    rows = rng.lognormal(size=(20, 3))
    out = rows.copy()
    path = tmp_path / "data.csv"
    header = "alpha,beta,yy"
    np.savetxt(path, out, delimiter=",", header=header, comments="")
    t = BayesianVariableSelection.from_csv(
        path, response="yy", log_transform=("alpha",), interactions=True
    )
    assert t.n_obs == 20
    # Columns: alpha (logged), beta, and the single pairwise interaction.
    assert t.predictor_names == ["alpha", "beta", "alpha*beta"]
    np.testing.assert_allclose(t.design[:, 0], np.log(rows[:, 0]))
    np.testing.assert_allclose(t.design[:, 1], rows[:, 1])
    np.testing.assert_allclose(
        t.design[:, 2], np.log(rows[:, 0]) * rows[:, 1]
    )
    np.testing.assert_allclose(t.response, rows[:, 2])


def test_bvs_synthesize_reports_support():
    t = BayesianVariableSelection.synthesize(
        n_predictors=8, n_obs=30, n_active=3, seed=4
    )
    assert len(t.true_support) == 3
    assert all(0 <= k < 8 for k in t.true_support)


# ---------------------------------------------------------------- registry


def test_registry_builds_every_kind(tmp_path):
    specs = [
        {"kind": "tabular", "probs": [0.2, 0.5, 0.3]},
        {"kind": "tabular", "table": "betabinom", "n": 30},
        {"kind": "tabular", "log_weights": [0.0, 0.5, -0.5]},
        {"kind": "spin", "n": 5, "interaction_scale": 1.0, "field": 0.1, "seed": 1},
        {"kind": "lattice_gaussian", "dim": 2, "scale": 2.0},
        {"kind": "gauge", "shape": [3, 3], "modulus": 5, "beta": 1.0},
        {"kind": "permutation", "n": 4, "seed": 0},
        {"kind": "facility", "n_sites": 5, "n_users": 12, "seed": 0},
        {"kind": "dpp", "n": 6, "seed": 0},
        {"kind": "bvs", "n_predictors": 5, "n_obs": 12, "seed": 0},
    ]
    for spec in specs:
        model = registry.build_model(spec)
        x = model.initial_state()
        assert np.isfinite(model.log_density(x)) or model.log_density(x) == -math.inf


def test_registry_rejects_unknown_kind():
    with pytest.raises(ConfigError):
        registry.build_model({"kind": "mystery"})


def test_registry_rejects_unknown_parameter():
    with pytest.raises(ConfigError):
        registry.build_model({"kind": "tabular", "log_weights": [1, 2], "typo": 3})


def test_registry_requires_mandatory_parameter():
    with pytest.raises(ConfigError):
        registry.build_model({"kind": "spin"})


def test_registry_loads_matrices_from_files(tmp_path):
    from jumpmc import artifacts

    J = np.array([[0.0, 0.4], [0.4, 0.0]])
    path = tmp_path / "couplings.csv"
    artifacts.save_matrix(path, J)
    model = registry.build_model(
        {"kind": "spin", "couplings_file": str(path), "field": 0.2}
    )
    np.testing.assert_allclose(model.couplings, J)
    assert model.field == 0.2
