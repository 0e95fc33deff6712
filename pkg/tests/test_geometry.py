"""Ball volumes, distribution laws, packing/covering and the state kernel."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

import oracles
from complexity_lab import geometry, qmath


# ---------------------------------------------------------------------------
# Clopper-Pearson

def test_clopper_pearson_edge_cases_match_closed_forms():
    lo, hi = geometry.clopper_pearson(0, 50)
    assert lo == 0.0
    assert hi == pytest.approx(oracles.clopper_pearson_closed_form_zero(50), rel=1e-12)
    lo, hi = geometry.clopper_pearson(50, 50)
    assert hi == 1.0
    assert lo == pytest.approx(oracles.clopper_pearson_closed_form_full(50), rel=1e-12)


def test_clopper_pearson_interior_brackets_estimate():
    lo, hi = geometry.clopper_pearson(30, 100)
    assert lo < 0.3 < hi
    # tighter at higher n
    lo2, hi2 = geometry.clopper_pearson(300, 1000)
    assert hi2 - lo2 < hi - lo


def test_clopper_pearson_coverage_is_monotone_in_confidence():
    lo95, hi95 = geometry.clopper_pearson(7, 40, confidence=0.95)
    lo99, hi99 = geometry.clopper_pearson(7, 40, confidence=0.99)
    assert lo99 <= lo95 and hi95 <= hi99


# ---------------------------------------------------------------------------
# Exact and bounded volumes

def test_vol_state_ball_values():
    assert geometry.vol_state_ball(2, 0.5) == pytest.approx(0.25, rel=1e-15)
    assert geometry.vol_state_ball(4, 0.3) == pytest.approx(0.3 ** 6, rel=1e-15)
    assert geometry.vol_state_ball(3, 1.0) == 1.0
    with pytest.raises(ValueError):
        geometry.vol_state_ball(2, 0.0)
    with pytest.raises(ValueError):
        geometry.vol_state_ball(2, 1.5)


def test_szarek_bounds_formula_and_ordering():
    b = geometry.szarek_bounds(2, 0.4)
    assert b.lower == pytest.approx((geometry.C_LOWER * 0.4) ** 3, rel=1e-15)
    assert b.upper == pytest.approx((geometry.C_UPPER * 0.4) ** 3, rel=1e-15)
    assert b.lower <= b.upper
    clamped = geometry.szarek_bounds(2, 0.4, clamp=True)
    assert clamped.upper == 1.0


def test_volume_bounds_validate_ordering():
    with pytest.raises(ValueError):
        geometry.VolumeBounds(lower=0.5, upper=0.1)
    with pytest.raises(ValueError):
        geometry.VolumeBounds(lower=0.1, upper=0.5, exact=0.9)


def test_mc_state_ball_matches_exact_law(rng):
    vol = geometry.mc_ball_volume("state", 2, 0.5, 200_000, rng)
    assert vol.ci_low <= 0.25 <= vol.ci_high
    assert vol.hits == int(round(vol.estimate * vol.n_samples))


def test_mc_unitary_ball_matches_weyl_law(rng):
    # independent analytic route to the d=2 ball measure
    for eps in (0.3, 0.7):
        want = float(oracles.weyl_distance_cdf_d2(eps))
        vol = geometry.mc_ball_volume("unitary", 2, eps, 200_000, rng)
        assert vol.ci_low <= want <= vol.ci_high


def test_mc_ball_volume_center_invariance(rng):
    # Haar invariance: measure around a random center equals measure at I
    center = qmath.haar_unitary(2, rng).entries
    at_center = geometry.mc_ball_volume("unitary", 2, 0.5, 100_000, rng, center=center)
    at_id = geometry.mc_ball_volume("unitary", 2, 0.5, 100_000, rng)
    assert at_center.ci_low < at_id.ci_high and at_id.ci_low < at_center.ci_high


def test_mc_ball_volume_rejects_bad_inputs(rng):
    with pytest.raises(ValueError):
        geometry.mc_ball_volume("unitary", 2, 2.5, 10, rng)
    with pytest.raises(ValueError):
        geometry.mc_ball_volume("state", 2, 1.5, 10, rng)
    with pytest.raises(ValueError):
        geometry.mc_ball_volume("density", 2, 0.5, 10, rng)


# ---------------------------------------------------------------------------
# Distribution laws

def test_overlap_pdf_integrates_to_one():
    for d in (2, 3, 6):
        total, _ = quad(lambda x: geometry.overlap_pdf(d, x), 0.0, 1.0)
        assert total == pytest.approx(1.0, abs=1e-10)


def test_overlap_pdf_matches_samples(rng):
    # CDF of the squared overlap is 1 - (1-x)^(d-1)
    d = 4
    vecs = qmath.haar_state_vectors(d, 30_000, rng)
    x = np.abs(vecs[:, 0]) ** 2
    ks = oracles.ks_statistic(x, lambda v: 1.0 - (1.0 - v) ** (d - 1))
    assert ks < 0.015


def test_arc_cdf_against_uniform_phase_samples(rng):
    d = 3
    phases = rng.uniform(0.0, 2 * np.pi, size=(30_000, d))
    arcs = qmath.batched_shortest_arc(phases)
    kept = arcs[arcs <= np.pi]  # the closed form covers r <= pi only
    for r in (0.5, 1.0, 2.0, 3.0):
        want = float(geometry.arc_cdf(d, r))
        got = np.mean(arcs <= r)
        assert abs(got - want) < 0.01
    assert len(kept) > 0


def test_arc_cdf_rejects_out_of_range():
    with pytest.raises(ValueError):
        geometry.arc_cdf(3, 3.5)
    with pytest.raises(ValueError):
        geometry.arc_cdf(3, -0.1)


def test_annulus_bound_value_and_domain():
    want = (2 * 1.2 * 0.5) ** 3 * 0.2
    assert geometry.annulus_bound(2, 0.5, 1.2) == pytest.approx(want, rel=1e-12)
    with pytest.raises(ValueError):
        geometry.annulus_bound(2, 0.5, 0.9)
    with pytest.raises(ValueError):
        geometry.annulus_bound(2, 1.4, 1.2)  # lam * kappa > sqrt(2)


# ---------------------------------------------------------------------------
# Packing and covering

def test_greedy_packing_is_separated(rng):
    pack = geometry.greedy_packing(lambda r: qmath.haar_state(2, r), 0.6, 200, rng)
    assert pack.count >= 2
    assert pack.verify(qmath.distance_state)


def test_greedy_packing_unitary_metric_default(rng):
    pack = geometry.greedy_packing(lambda r: qmath.haar_unitary(2, r), 0.9, 100, rng)
    assert pack.verify(qmath.distance_unitary)


def test_packing_number_exact_matches_bruteforce(rng):
    for trial in range(5):
        pts = rng.uniform(0.0, 1.0, size=14)
        dist = np.abs(pts[:, None] - pts[None, :])
        for radius in (0.1, 0.25):
            assert geometry.packing_number_exact(dist, radius) == \
                oracles.packing_number_bruteforce(dist, radius)


def test_covering_number_exact_matches_bruteforce(rng):
    for trial in range(5):
        pts = rng.uniform(0.0, 1.0, size=12)
        dist = np.abs(pts[:, None] - pts[None, :])
        for radius in (0.1, 0.3):
            assert geometry.covering_number_exact(dist, radius) == \
                oracles.covering_number_bruteforce(dist, radius)


@settings(deadline=None, max_examples=30)
@given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=12),
       st.floats(0.05, 0.5))
def test_packing_covering_sandwich(points, radius):
    # N_cov(r) <= N_pack(r) <= N_cov(r/2) on any finite metric space
    pts = np.array(points)
    dist = np.abs(pts[:, None] - pts[None, :])
    pack = geometry.packing_number_exact(dist, radius)
    cov = geometry.covering_number_exact(dist, radius)
    cov_half = geometry.covering_number_exact(dist, radius / 2.0)
    assert cov <= pack <= cov_half


def test_exact_calculators_reject_large_sets():
    dist = np.zeros((201, 201))
    with pytest.raises(ValueError):
        geometry.packing_number_exact(dist, 0.1)
    with pytest.raises(ValueError):
        geometry.covering_number_exact(dist, 0.1)


# ---------------------------------------------------------------------------
# State kernel

def test_state_kernel_normalizer():
    center = qmath.PureState(np.eye(3)[0])
    kern = geometry.StateKernel.create(2, 3, center)
    assert kern.normalizer == pytest.approx(1.0 / math.comb(4, 2), rel=1e-15)


def test_state_kernel_averages_to_one(rng):
    center = qmath.haar_state(2, rng)
    kern = geometry.StateKernel.create(3, 2, center)
    vecs = qmath.haar_state_vectors(2, 100_000, rng)
    overlaps = np.abs(vecs @ center.amplitudes.conj()) ** 2
    mean = np.mean(overlaps ** 3) / kern.normalizer
    assert mean == pytest.approx(1.0, abs=0.03)


def test_state_kernel_eval_at_center_is_inverse_normalizer(rng):
    center = qmath.haar_state(2, rng)
    kern = geometry.StateKernel.create(4, 2, center)
    assert geometry.state_kernel_eval(kern, center) == pytest.approx(
        1.0 / kern.normalizer, rel=1e-12)


def test_state_kernel_dimension_check(rng):
    center = qmath.haar_state(2, rng)
    with pytest.raises(qmath.DimensionMismatchError):
        geometry.StateKernel.create(2, 3, center)
    kern = geometry.StateKernel.create(2, 2, center)
    with pytest.raises(qmath.DimensionMismatchError):
        geometry.state_kernel_eval(kern, qmath.haar_state(3, rng))


def test_state_kernel_tail_bound_domain():
    with pytest.raises(ValueError, match="requires k >="):
        geometry.state_kernel_tail_bound(2, 5, 0.8)
    val = geometry.state_kernel_tail_bound(2, 13, 0.8)
    assert val == pytest.approx(math.exp(-13 * 0.8 ** 4 / 8.0), rel=1e-12)


def test_mc_state_kernel_tail_below_bound(rng):
    # empirical tail mass should sit well under the analytic bound
    d, k, eps = 2, 13, 0.8
    bound = geometry.state_kernel_tail_bound(d, k, eps)
    tail = geometry.mc_state_kernel_tail(d, k, eps, 200_000, rng)
    assert 0.0 <= tail <= bound
