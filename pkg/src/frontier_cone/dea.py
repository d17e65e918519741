"""Conical-hull (CRS) and convex-hull (VRS) directional-edge estimators.

The CRS score at an evaluation point is the largest factor by which the
output bundle can be scaled while staying inside the free-disposal conical
hull of the observation rays; the VRS score constrains the hull weights to
sum to one.  ``SectionFrontier`` exposes the same hull cut by the
hyperplane through ``x0`` perpendicular to ``x0``, which is where the
limit-law constants are estimated.
"""

from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import InvalidSample, NotApplicable, OutsideHull
from .lp import INFEASIBLE, OPTIMAL, LinearProgram, solve


@dataclass(frozen=True)
class ObservationSet:
    """Paired nonnegative input/output bundles, one row per production unit."""

    inputs: np.ndarray
    outputs: np.ndarray

    def __post_init__(self):
        inputs = np.atleast_2d(np.asarray(self.inputs, dtype=np.float64))
        outputs = np.asarray(self.outputs, dtype=np.float64)
        if outputs.ndim == 1:
            outputs = outputs[:, None]
        if inputs.ndim != 2 or outputs.ndim != 2:
            raise InvalidSample("inputs and outputs must be 2-d arrays")
        if inputs.shape[0] != outputs.shape[0] or inputs.shape[0] < 1:
            raise InvalidSample("inputs and outputs need one common row per observation")
        if not (np.all(np.isfinite(inputs)) and np.all(np.isfinite(outputs))):
            raise InvalidSample("observations must be finite")
        if np.any(inputs < 0.0) or np.any(outputs < 0.0):
            raise InvalidSample("observations must be nonnegative")
        if np.any(np.all(inputs == 0.0, axis=1)):
            raise InvalidSample("every input row must be nonzero")
        inputs.setflags(write=False)
        outputs.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)

    @property
    def n(self):
        return self.inputs.shape[0]

    @property
    def p(self):
        return self.inputs.shape[1]

    @property
    def q(self):
        return self.outputs.shape[1]


@dataclass(frozen=True)
class EvalPoint:
    """The fixed interior point (x0, y0) at which the score is estimated."""

    x0: np.ndarray
    y0: np.ndarray

    def __post_init__(self):
        x0 = np.asarray(self.x0, dtype=np.float64).reshape(-1)
        y0 = np.asarray(self.y0, dtype=np.float64).reshape(-1)
        for name, v in (("x0", x0), ("y0", y0)):
            if v.size == 0 or not np.all(np.isfinite(v)) or np.any(v <= 0.0):
                raise InvalidSample(f"{name} must have finite, strictly positive entries")
        x0.setflags(write=False)
        y0.setflags(write=False)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "y0", y0)


@dataclass(frozen=True)
class Score:
    lambda_hat: float
    feasible: bool


def _check_dims(sample, at):
    if at.x0.size != sample.p or at.y0.size != sample.q:
        raise InvalidSample(
            f"evaluation point has dimensions ({at.x0.size},{at.y0.size}), "
            f"sample has (p,q)=({sample.p},{sample.q})"
        )


def _score_lp(sample, at, convexity):
    n = sample.n
    c = np.zeros(n + 1)
    c[n] = 1.0
    le = np.zeros((sample.p + sample.q, n + 1))
    le[: sample.p, :n] = sample.inputs.T
    le[sample.p :, :n] = -sample.outputs.T
    le[sample.p :, n] = at.y0
    rhs = np.concatenate([at.x0, np.zeros(sample.q)])
    eq_m = eq_r = None
    if convexity:
        eq_m = np.concatenate([np.ones(n), [0.0]])[None, :]
        eq_r = np.array([1.0])
    return solve(LinearProgram(c, eq_m, eq_r, le, rhs))


def crs_score(sample, at):
    """Output-expansion score against the conical hull of the observation rays.

    Largest ``lam`` with ``sum g_i X_i <= x0`` and ``sum g_i Y_i >= lam y0``
    over ``g >= 0``; always feasible (g = 0 gives lam = 0).
    """
    _check_dims(sample, at)
    sol = _score_lp(sample, at, convexity=False)
    if sol.status != OPTIMAL:  # pragma: no cover - cone LP is always feasible/bounded
        raise InvalidSample(f"score program unexpectedly {sol.status}")
    return Score(lambda_hat=sol.value, feasible=True)


def vrs_score(sample, at):
    """Same program with hull weights summing to one; may be infeasible."""
    _check_dims(sample, at)
    sol = _score_lp(sample, at, convexity=True)
    if sol.status == INFEASIBLE:
        return Score(lambda_hat=float("nan"), feasible=False)
    if sol.status != OPTIMAL:  # pragma: no cover
        raise InvalidSample(f"score program unexpectedly {sol.status}")
    return Score(lambda_hat=sol.value, feasible=True)


def frontier_output(sample, x0):
    """Estimated maximal output level at input ``x0`` (single-output samples).

    Equals ``y0 * crs_score(sample, (x0, y0)).lambda_hat`` for any positive
    ``y0``; the product does not depend on ``y0``.
    """
    if sample.q != 1:
        raise NotApplicable("frontier_output is defined for single-output samples")
    at = EvalPoint(x0=x0, y0=np.ones(1))
    return crs_score(sample, at).lambda_hat


class SectionFrontier:
    """Upper boundary of the convex hull of section-projected observations.

    ``height(z)`` is the hull's maximal rescaled output above in-plane
    coordinates ``z``; evaluating at a projected observation's own
    coordinates is always feasible.
    """

    def __init__(self, projection):
        self.projection = projection
        self._point_cache = {}
        self._origin = None

    def __len__(self):
        return len(self.projection)

    def height(self, z2):
        z2 = np.asarray(z2, dtype=np.float64).reshape(-1)
        proj = self.projection
        n = len(proj)
        if z2.size != proj.z2.shape[1]:
            raise InvalidSample("query dimension does not match the section")
        eq = np.vstack([proj.z2.T, np.ones(n)])
        rhs = np.concatenate([z2, [1.0]])
        sol = solve(LinearProgram(proj.yprime, eq, rhs))
        if sol.status == INFEASIBLE:
            raise OutsideHull("query lies outside the hull of the projected points")
        return sol.value

    def height_at(self, i):
        if i not in self._point_cache:
            self._point_cache[i] = self.height(self.projection.z2[i])
        return self._point_cache[i]

    def origin_height(self):
        if self._origin is None:
            self._origin = self.height(np.zeros(self.projection.z2.shape[1]))
        return self._origin


def make_section(sample, x0):
    """Section frontier of a single-output sample at ``x0``."""
    if sample.q != 1:
        raise NotApplicable("use reduce_outputs first for multi-output samples")
    x0 = np.asarray(x0, dtype=np.float64)
    proj = geometry.project_to_section(sample.inputs, sample.outputs[:, 0], x0)
    return SectionFrontier(proj)


@dataclass(frozen=True)
class ReducedProblem:
    """A q>1 problem rewritten with one output along the ``y0`` ray.

    ``inputs`` holds the original inputs plus the across-``y0`` output
    components (which may be negative), ``outputs`` the along-``y0``
    components; the new evaluation input is ``(x0, 0)``.
    """

    inputs: np.ndarray    # (n, p+q-1)
    outputs: np.ndarray   # (n,)
    x0: np.ndarray        # (p+q-1,)
    y0_norm: float
    rotation: geometry.OutputRotation
    orig_p: int
    orig_q: int


def reduce_outputs(sample, at):
    """Rotate a q>=2 problem to (p+q-1) signed inputs and one output."""
    _check_dims(sample, at)
    if sample.q < 2:
        raise NotApplicable("reduction applies to q >= 2; q = 1 is already scalar-output")
    rot = geometry.transform_outputs(sample.outputs, at.y0)
    inputs = np.hstack([sample.inputs, rot.u])
    x0 = np.concatenate([at.x0, np.zeros(sample.q - 1)])
    return ReducedProblem(
        inputs=inputs,
        outputs=rot.omega.copy(),
        x0=x0,
        y0_norm=float(np.linalg.norm(at.y0)),
        rotation=rot,
        orig_p=sample.p,
        orig_q=sample.q,
    )


def reduced_crs_score(reduced):
    """CRS score recomputed on the reduced problem, mapped back to the
    original scale.

    The across-``y0`` coordinates sit on the section hyperplane and have no
    disposability direction, so they are constrained to hit the target
    exactly.
    """
    n = reduced.outputs.shape[0]
    p = reduced.orig_p
    c = np.zeros(n + 1)
    c[n] = 1.0
    le = np.zeros((p + 1, n + 1))
    le[:p, :n] = reduced.inputs[:, :p].T
    le[p, :n] = -reduced.outputs
    le[p, n] = 1.0
    rhs = np.concatenate([reduced.x0[:p], [0.0]])
    eq = np.zeros((reduced.orig_q - 1, n + 1))
    eq[:, :n] = reduced.inputs[:, p:].T
    sol = solve(LinearProgram(c, eq, np.zeros(reduced.orig_q - 1), le, rhs))
    if sol.status != OPTIMAL:
        return Score(lambda_hat=float("nan"), feasible=False)
    return Score(lambda_hat=sol.value / reduced.y0_norm, feasible=True)


def make_reduced_section(reduced):
    """Section frontier of the reduced problem at its evaluation input."""
    basis = geometry._complement_unchecked(reduced.x0)  # (x0, 0) has zero entries
    proj = geometry.project_to_section(reduced.inputs, reduced.outputs, reduced.x0, basis)
    return SectionFrontier(proj)


def section_for(sample, at):
    """Section frontier at ``at`` for any q: direct for q=1, reduced otherwise.

    Returns ``(frontier, p_eff, y0_norm)`` where ``p_eff`` is the effective
    input dimension driving all limit-law exponents.
    """
    _check_dims(sample, at)
    if sample.q == 1:
        return make_section(sample, at.x0), sample.p, float(at.y0[0])
    reduced = reduce_outputs(sample, at)
    return make_reduced_section(reduced), sample.p + sample.q - 1, reduced.y0_norm
