import math

import numpy as np
import pytest
from scipy.integrate import quad

from frontier_cone.dea import EvalPoint
from frontier_cone.errors import NotApplicable, OutsideSupport
from frontier_cone.geometry import orthonormal_complement
from frontier_cone.scenarios import (
    ScenarioSpec,
    default_eval_point,
    generate,
    true_curvature_det,
    true_frontier_output,
    true_kappa,
    true_lambda,
    true_theta,
)


def test_q1_frontier_level():
    spec = ScenarioSpec(kind="cobb-douglas-q1", n=2)
    assert true_frontier_output(spec, [0.5, 0.5]) == pytest.approx(0.5, abs=1e-12)
    assert true_lambda(spec, EvalPoint(x0=[0.5, 0.5], y0=[0.25])) == pytest.approx(2.0)


def test_q2_reference_score():
    spec = ScenarioSpec(kind="cobb-douglas-q2", n=2)
    at = EvalPoint(x0=[15.0, 15.0], y0=[10.0, 10.0])
    lam = true_lambda(spec, at)
    assert lam == pytest.approx(1.0607, abs=1e-4)
    # the symmetric frontier ray: outputs 15 cos(pi/4) = 10.6066 each
    y_sym = 15.0 * math.cos(math.pi / 4.0)
    assert y_sym == pytest.approx(10.6066, abs=1e-4)
    assert y_sym / 10.0 == pytest.approx(lam, abs=1e-12)


def test_q2_angle_clamping():
    spec = ScenarioSpec(kind="cobb-douglas-q2", n=2)
    # extremely lopsided target: optimal angle clamps at the range edge
    lam = true_lambda(spec, EvalPoint(x0=[15.0, 15.0], y0=[10.0, 0.01]))
    lo = (1.0 / 9.0) * (math.pi / 2.0)
    assert lam == pytest.approx(15.0 * math.cos(lo) / 10.0, rel=1e-12)


def test_true_lambda_homogeneity():
    rng = np.random.default_rng(2)
    for kind in ("cobb-douglas-q1", "cobb-douglas-q2", "linear"):
        spec = ScenarioSpec(kind=kind, n=2)
        at = default_eval_point(spec)
        base = true_lambda(spec, at)
        for _ in range(10):
            alpha = float(rng.uniform(0.8, 1.2))
            beta = float(rng.uniform(0.5, 2.0))
            moved = true_lambda(spec, EvalPoint(x0=alpha * at.x0, y0=beta * at.y0))
            assert moved == pytest.approx(alpha / beta * base, rel=1e-12)


def test_generated_points_inside_production_set():
    for kind, seed in (("cobb-douglas-q1", 0), ("cobb-douglas-q2", 1), ("linear", 2)):
        spec = ScenarioSpec(kind=kind, n=200, seed=seed)
        sample = generate(spec)
        assert sample.n == 200
        for i in range(0, 200, 17):
            at = EvalPoint(x0=sample.inputs[i], y0=sample.outputs[i])
            assert true_lambda(spec, at) >= 1.0 - 1e-9


def test_seed_determinism():
    spec = ScenarioSpec(kind="cobb-douglas-q2", n=50, seed=123)
    a, b = generate(spec), generate(spec)
    assert np.array_equal(a.inputs, b.inputs)
    assert np.array_equal(a.outputs, b.outputs)
    other = generate(ScenarioSpec(kind="cobb-douglas-q2", n=50, seed=124))
    assert not np.array_equal(a.outputs, other.outputs)


def test_outside_support_rejected():
    spec = ScenarioSpec(kind="cobb-douglas-q1", n=2)
    with pytest.raises(OutsideSupport):
        true_lambda(spec, EvalPoint(x0=[1.5, 0.5], y0=[0.3]))
    with pytest.raises(OutsideSupport):
        true_theta(spec, [0.5, 0.5, 0.5])


def test_theta_closed_form_matches_quadrature():
    rate = 3.0
    for x0 in ([0.5, 0.5], [0.4, 0.7]):
        spec = ScenarioSpec(kind="cobb-douglas-q1", n=2, inefficiency_rate=rate)
        x0 = np.asarray(x0)
        g0 = true_frontier_output(spec, x0)

        def density_on_ray(u):
            x = u * x0
            y = u * g0
            if np.any(x > 1.0) or np.any(x < 0.0):
                return 0.0
            return rate * x[0] ** (-0.4 * rate) * x[1] ** (-0.6 * rate) * y ** (rate - 1.0)

        val, _ = quad(lambda u: u**2 * density_on_ray(u), 0.0, 1.0 / x0.max(), limit=200)
        oracle = float(np.linalg.norm(x0)) * val
        assert true_theta(spec, x0) == pytest.approx(oracle, rel=1e-7)
    assert true_theta(ScenarioSpec(kind="cobb-douglas-q1", n=2), [0.5, 0.5]) == \
        pytest.approx(6.0 * math.sqrt(2.0), rel=1e-12)


def test_linear_theta_closed_form():
    spec = ScenarioSpec(kind="linear", n=2, inefficiency_rate=2.5, slope=3.0)
    # rate / (slope * x0), independent of the support box
    assert true_theta(spec, [1.0]) == pytest.approx(2.5 / 3.0, rel=1e-12)

    def density_on_ray(u):
        x = u * 1.0
        if x < spec.input_low or x > spec.input_high:
            return 0.0
        y = u * 3.0
        return (1.0 / (spec.input_high - spec.input_low)) * 2.5 * y**1.5 / (3.0 * x) ** 2.5

    val, _ = quad(lambda u: u * density_on_ray(u), spec.input_low, spec.input_high, limit=200)
    assert true_theta(spec, [1.0]) == pytest.approx(val, rel=1e-7)


def test_curvature_det_matches_finite_differences():
    spec = ScenarioSpec(kind="cobb-douglas-q1", n=2)
    for x0 in ([0.5, 0.5], [0.3, 0.8]):
        x0 = np.asarray(x0)
        cols = orthonormal_complement(x0).columns[:, 0]
        g = lambda x: x[0] ** 0.4 * x[1] ** 0.6
        h = 1e-5
        second = (g(x0 + h * cols) - 2.0 * g(x0) + g(x0 - h * cols)) / h**2
        assert true_curvature_det(spec, x0) == pytest.approx(-0.5 * second, rel=1e-5)
    assert true_kappa(spec, [0.5, 0.5]) == pytest.approx(
        6.0 * math.sqrt(2.0) / math.sqrt(0.48), rel=1e-9
    )


def test_curvature_not_defined_for_other_kinds():
    with pytest.raises(NotApplicable):
        true_curvature_det(ScenarioSpec(kind="linear", n=2), [1.0])
    with pytest.raises(NotApplicable):
        true_theta(ScenarioSpec(kind="cobb-douglas-q2", n=2), [15.0, 15.0])


def test_spec_validation():
    with pytest.raises(ValueError):
        ScenarioSpec(kind="unknown", n=5)
    with pytest.raises(ValueError):
        ScenarioSpec(kind="linear", n=0)
    with pytest.raises(ValueError):
        ScenarioSpec(kind="linear", n=5, inefficiency_rate=0.0)
