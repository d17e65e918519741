"""Seeded generators with known frontiers for simulation studies.

Three families:

* ``cobb-douglas-q1``: two inputs uniform on a box, single output
  ``x1^0.4 x2^0.6`` shrunk by a multiplicative exponential inefficiency.
* ``cobb-douglas-q2``: two inputs uniform on [10, 20]^2 and two outputs on
  a generalized Cobb-Douglas output arc, shrunk the same way.
* ``linear``: one input, one output under a straight ray frontier.

All frontiers are homogeneous of degree one, so the implied production
sets are cones and the true score has a closed form along any query ray.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dea import EvalPoint, ObservationSet
from .errors import NotApplicable, OutsideSupport
from .geometry import orthonormal_complement

COBB_DOUGLAS_Q1 = "cobb-douglas-q1"
COBB_DOUGLAS_Q2 = "cobb-douglas-q2"
LINEAR = "linear"
KINDS = (COBB_DOUGLAS_Q1, COBB_DOUGLAS_Q2, LINEAR)

_Q2_ANGLE_LO = (1.0 / 9.0) * (math.pi / 2.0)
_Q2_ANGLE_HI = (8.0 / 9.0) * (math.pi / 2.0)


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    n: int
    inefficiency_rate: float = 3.0
    seed: object = 0
    input_low: float = None
    input_high: float = None
    slope: float = 2.0  # linear kind only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.inefficiency_rate > 0.0:
            raise ValueError("inefficiency_rate must be positive")
        lo, hi = _default_bounds(self.kind)
        if self.input_low is None:
            object.__setattr__(self, "input_low", lo)
        if self.input_high is None:
            object.__setattr__(self, "input_high", hi)
        if not self.input_low < self.input_high:
            raise ValueError("input_low must be below input_high")
        if self.kind == LINEAR and not self.slope > 0.0:
            raise ValueError("slope must be positive")


def _default_bounds(kind):
    if kind == COBB_DOUGLAS_Q1:
        return 0.0, 1.0
    if kind == COBB_DOUGLAS_Q2:
        return 10.0, 20.0
    return 0.5, 1.5


def _cd_q1_frontier(x):
    return x[..., 0] ** 0.4 * x[..., 1] ** 0.6


def generate(spec):
    """Draw an ObservationSet from the scenario; bit-identical per (spec, seed)."""
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.input_low, spec.input_high
    if spec.kind == COBB_DOUGLAS_Q2:
        angle = rng.uniform(_Q2_ANGLE_LO, _Q2_ANGLE_HI, spec.n)
        inputs = rng.uniform(lo, hi, (spec.n, 2))
        y1 = inputs[:, 0] ** 0.4 * inputs[:, 1] ** 0.6 * np.cos(angle)
        y2 = inputs[:, 0] ** 0.5 * inputs[:, 1] ** 0.5 * np.sin(angle)
        efficient = np.column_stack([y1, y2])
    elif spec.kind == COBB_DOUGLAS_Q1:
        inputs = rng.uniform(lo, hi, (spec.n, 2))
        efficient = _cd_q1_frontier(inputs)[:, None]
    else:
        inputs = rng.uniform(lo, hi, (spec.n, 1))
        efficient = spec.slope * inputs
    shrink = np.exp(-rng.exponential(1.0, spec.n) / spec.inefficiency_rate)
    return ObservationSet(inputs=inputs, outputs=efficient * shrink[:, None])


def default_eval_point(spec):
    """The scenario's canonical interior evaluation point."""
    mid = 0.5 * (spec.input_low + spec.input_high)
    if spec.kind == COBB_DOUGLAS_Q2:
        return EvalPoint(x0=np.array([15.0, 15.0]), y0=np.array([10.0, 10.0]))
    if spec.kind == COBB_DOUGLAS_Q1:
        x0 = np.array([mid, mid])
        return EvalPoint(x0=x0, y0=np.array([0.5 * _cd_q1_frontier(x0)]))
    return EvalPoint(x0=np.array([mid]), y0=np.array([0.5 * spec.slope * mid]))


def _check_support(spec, x0):
    x0 = np.asarray(x0, dtype=np.float64).reshape(-1)
    expected = 1 if spec.kind == LINEAR else 2
    if x0.size != expected:
        raise OutsideSupport(f"{spec.kind} expects {expected} input dimensions")
    if np.any(x0 < spec.input_low) or np.any(x0 > spec.input_high):
        raise OutsideSupport(f"x0 {x0.tolist()} outside [{spec.input_low}, {spec.input_high}]")
    return x0


def true_lambda(spec, at):
    """Ground-truth output-expansion score at an EvalPoint."""
    x0 = _check_support(spec, at.x0)
    y0 = np.asarray(at.y0, dtype=np.float64).reshape(-1)
    if spec.kind == COBB_DOUGLAS_Q1:
        return float(_cd_q1_frontier(x0) / y0[0])
    if spec.kind == LINEAR:
        return float(spec.slope * x0[0] / y0[0])
    # Output arc: the optimal angle equalizes the two expansion limits,
    # clamped to the generator's angle range.
    g1 = x0[0] ** 0.4 * x0[1] ** 0.6
    g2 = x0[0] ** 0.5 * x0[1] ** 0.5
    angle = min(max(math.atan2(g1 * y0[1], g2 * y0[0]), _Q2_ANGLE_LO), _Q2_ANGLE_HI)
    return float(min(g1 * math.cos(angle) / y0[0], g2 * math.sin(angle) / y0[1]))


def true_frontier_output(spec, x0):
    """Ground-truth maximal output at ``x0`` (single-output kinds)."""
    x0 = _check_support(spec, x0)
    if spec.kind == COBB_DOUGLAS_Q1:
        return float(_cd_q1_frontier(x0))
    if spec.kind == LINEAR:
        return float(spec.slope * x0[0])
    raise NotApplicable("two-output scenario has an output arc, not a single level")


def true_theta(spec, x0):
    """Closed-form ray-integrated density at the frontier point above ``x0``.

    The integral runs over the part of the ray through ``x0`` whose input
    lies inside the support box; the conditional output density at the
    frontier is rate / (u * frontier(x0)).
    """
    x0 = _check_support(spec, x0)
    if spec.kind == COBB_DOUGLAS_Q2:
        raise NotApplicable("no closed form for the two-output scenario")
    lo, hi = spec.input_low, spec.input_high
    u_lo = max(lo / x0.min(), 0.0)
    u_hi = hi / x0.max()
    p = x0.size
    level = true_frontier_output(spec, x0)
    box = (hi - lo) ** p
    x0_norm = float(np.linalg.norm(x0))
    return x0_norm * spec.inefficiency_rate * (u_hi**p - u_lo**p) / (p * box * level)


def true_curvature_det(spec, x0):
    """det of the negated in-plane frontier Hessian over two, in closed form."""
    x0 = _check_support(spec, x0)
    if spec.kind != COBB_DOUGLAS_Q1:
        raise NotApplicable("curvature constant applies to the curved q=1 scenario")
    a, b = 0.4, 0.6
    g = _cd_q1_frontier(x0)
    hess = g * np.array(
        [
            [a * (a - 1) / x0[0] ** 2, a * b / (x0[0] * x0[1])],
            [a * b / (x0[0] * x0[1]), b * (b - 1) / x0[1] ** 2],
        ]
    )
    cols = orthonormal_complement(x0).columns
    return float(np.linalg.det(-0.5 * cols.T @ hess @ cols))


def true_kappa(spec, x0):
    """Curvature-normalized density constant of the curved q=1 scenario."""
    return true_theta(spec, x0) * true_curvature_det(spec, x0) ** -0.5
