import numpy as np
import pytest

from frontier_cone.errors import DegenerateRegion, EmptyInput, OutsideHull
from frontier_cone.inference import ecdf_compare
from frontier_cone.limit import (
    RegionSpec,
    hull_height,
    sample_region,
    simulate_replicates,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        RegionSpec(kind="paraboloid", dim=2, scale=-1.0, n=10)
    with pytest.raises(ValueError):
        RegionSpec(kind="wedge", dim=2, scale=1.0, n=10)
    with pytest.raises(ValueError):
        RegionSpec(kind="rectangle", dim=0, scale=1.0, n=10)


def test_unit_paraboloid_band_bounds():
    spec = RegionSpec(kind="paraboloid", dim=2, scale=1.0, n=1)
    assert spec.side() == pytest.approx(1.0)
    assert spec.depth() == pytest.approx(1.0)
    rng = np.random.default_rng(0)
    v2, w = sample_region(spec, 2000, rng)
    assert np.all(np.abs(v2) <= 0.5)
    shifted = w + np.sum(v2 * v2, axis=1)
    assert np.all(shifted <= 0.0)
    assert np.all(shifted >= -1.0 - 1e-12)


def test_unit_rectangle_bounds():
    spec = RegionSpec(kind="rectangle", dim=2, scale=1.0, n=1)
    rng = np.random.default_rng(1)
    v2, w = sample_region(spec, 2000, rng)
    assert np.all(np.abs(v2) <= 0.5)
    assert np.all((w <= 0.0) & (w >= -1.0))


def test_region_volume_is_n_over_scale():
    spec = RegionSpec(kind="paraboloid", dim=3, scale=2.0, n=100)
    assert spec.volume() == pytest.approx(50.0, rel=1e-12)
    spec = RegionSpec(kind="rectangle", dim=4, scale=0.5, n=30)
    assert spec.volume() == pytest.approx(60.0, rel=1e-12)


def test_hull_height_at_sample_point():
    v2 = np.array([[0.3], [-0.2], [0.1]])
    w = np.array([-1.0, -2.0, -0.5])
    assert hull_height(v2, w, np.array([0.1])) >= -0.5 - 1e-12


def test_hull_height_unique_combination():
    value = hull_height(np.array([[-1.0], [1.0]]), np.array([-2.0, -4.0]), np.zeros(1))
    assert value == pytest.approx(-3.0, abs=1e-10)


def test_hull_height_nonpositive_and_outside():
    rng = np.random.default_rng(2)
    v2 = rng.uniform(-1.0, 1.0, (30, 2))
    w = -rng.uniform(0.0, 3.0, 30)
    assert hull_height(v2, w, np.zeros(2)) <= 0.0
    with pytest.raises(OutsideHull):
        hull_height(v2, w, np.array([5.0, 5.0]))
    with pytest.raises(EmptyInput):
        hull_height(np.zeros((0, 1)), np.zeros(0), np.zeros(1))


def test_hull_height_monotone_under_removal():
    rng = np.random.default_rng(3)
    for _ in range(10):
        v2 = rng.uniform(-2.0, 2.0, (40, 1))
        w = -rng.uniform(0.0, 4.0, 40)
        full = hull_height(v2, w, np.zeros(1))
        keep = rng.permutation(40)[:20]
        try:
            part = hull_height(v2[keep], w[keep], np.zeros(1))
        except OutsideHull:
            continue
        assert part <= full + 1e-9


def test_replicates_deterministic_and_nonpositive():
    spec = RegionSpec(kind="paraboloid", dim=2, scale=1.0, n=200)
    first = simulate_replicates(spec, 50, seed=7)
    second = simulate_replicates(spec, 50, seed=7)
    assert np.array_equal(first.values, second.values)
    assert np.all(first.values <= 0.0)


def test_single_replicate_within_region_bounds():
    spec = RegionSpec(kind="paraboloid", dim=2, scale=1.0, n=1000)
    rep = simulate_replicates(spec, 1, seed=11)
    bound = (spec.side() / 2.0) ** 2 * (spec.dim - 1) + spec.depth()
    assert -bound - 1e-9 <= rep.values[0] <= 0.0


def test_workers_do_not_change_values():
    spec = RegionSpec(kind="rectangle", dim=2, scale=2.0, n=100)
    serial = simulate_replicates(spec, 40, seed=5, workers=1)
    parallel = simulate_replicates(spec, 40, seed=5, workers=3)
    assert np.array_equal(serial.values, parallel.values)
    assert serial.invalid_count == parallel.invalid_count


def test_degenerate_region_raises():
    # three points in a 3-d in-plane space almost never cover the origin
    spec = RegionSpec(kind="paraboloid", dim=4, scale=1.0, n=3)
    with pytest.raises(DegenerateRegion):
        simulate_replicates(spec, 2, seed=0)


def test_invalid_redraws_counted():
    spec = RegionSpec(kind="paraboloid", dim=2, scale=1.0, n=4)
    rep = simulate_replicates(spec, 200, seed=13)
    assert rep.invalid_count > 0
    assert rep.values.size == 200


def test_seed_streams_distributionally_stable():
    spec = RegionSpec(kind="paraboloid", dim=2, scale=1.0, n=100)
    a = simulate_replicates(spec, 2000, seed=1)
    b = simulate_replicates(spec, 2000, seed=2)
    assert ecdf_compare(a.values, b.values).distance < 0.05


def test_one_dim_rectangle_matches_exponential_law():
    # p = 1 linear case: -height is the minimum of n uniforms on [0, n/scale]
    theta, n = 2.0, 500
    spec = RegionSpec(kind="rectangle", dim=1, scale=theta, n=n)
    rep = simulate_replicates(spec, 5000, seed=3)
    x = np.sort(-rep.values)
    cdf = 1.0 - np.exp(-theta * x)
    ranks = np.arange(1, x.size + 1)
    ks = max(np.max(np.abs(cdf - ranks / x.size)),
             np.max(np.abs(cdf - (ranks - 1) / x.size)))
    assert ks < 0.05
