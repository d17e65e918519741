"""Plug-in estimation of the limit-law scale constants.

Two ingredients: a count of observations in a thin band under the section
frontier (estimating the density integrated along the ray to the frontier
point) and a local quadratic fit of the section frontier (estimating the
curvature determinant).  Their combination is the scale of the curved
limit region; the count alone drives the linear-frontier fallback.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dea import make_reduced_section, reduce_outputs
from .errors import (
    InsufficientLocalData,
    InvalidBandwidth,
    NotLocallyStrictlyConcave,
    OutsideHull,
)

# Slack for the upper membership bound: a point's own hull height is >= its
# rescaled output in exact arithmetic, but LP roundoff can undercut it.
_MEMBER_TOL = 1e-9


def unit_ball_volume(r):
    """Volume of the r-dimensional unit ball."""
    if r < 0:
        raise ValueError("dimension must be nonnegative")
    return math.pi ** (r / 2.0) / math.gamma(r / 2.0 + 1.0)


def estimate_theta(frontier, epsilon):
    """Band-count estimate of the ray-integrated density at the frontier.

    A projected point is a member when its in-plane coordinates are within
    ``epsilon`` of the origin and its rescaled output within ``epsilon``
    below the section frontier.  Returns ``(theta_hat, member_count)``.
    """
    if not (np.isfinite(epsilon) and epsilon > 0.0):
        raise InvalidBandwidth("epsilon must be positive")
    proj = frontier.projection
    p = proj.input_dim
    n = len(proj)
    norms = np.linalg.norm(proj.z2, axis=1)
    members = 0
    for i in np.flatnonzero(norms <= epsilon):
        try:
            h = frontier.height_at(int(i))
        except OutsideHull:  # pragma: no cover - own point is always in hull
            continue
        if h - epsilon <= proj.yprime[i] <= h + _MEMBER_TOL:
            members += 1
    x0_norm = np.linalg.norm(proj.x0)
    theta = x0_norm / unit_ball_volume(p - 1) / n / epsilon**p * members
    return theta, members


@dataclass(frozen=True)
class QuadFit:
    """Least-squares quadratic for the section frontier near the origin."""

    intercept: float
    gradient: np.ndarray
    quad: np.ndarray  # symmetric (d, d)
    n_points: int


def fit_local_quadratic(frontier, delta):
    """Quadratic regression of section heights on points within ``delta``.

    The origin (with its own height) is always included.  Off-diagonal
    monomial coefficients are split evenly to make the quadratic term
    symmetric.
    """
    if not (np.isfinite(delta) and delta > 0.0):
        raise InvalidBandwidth("delta must be positive")
    proj = frontier.projection
    d = proj.z2.shape[1]
    if d == 0:
        # One-dimensional effective input: the section is the single point
        # at the origin and the frontier has no in-plane curvature.
        return QuadFit(
            intercept=frontier.origin_height(),
            gradient=np.zeros(0),
            quad=np.zeros((0, 0)),
            n_points=1,
        )

    norms = np.linalg.norm(proj.z2, axis=1)
    idx = np.flatnonzero(norms <= delta)
    pts = np.vstack([proj.z2[idx], np.zeros((1, d))])
    heights = np.concatenate(
        [[frontier.height_at(int(i)) for i in idx], [frontier.origin_height()]]
    )

    needed = 1 + d + d * (d + 1) // 2
    found = pts.shape[0]
    if found < needed:
        raise InsufficientLocalData(needed, found)

    design = np.empty((found, needed))
    design[:, 0] = 1.0
    design[:, 1 : 1 + d] = pts
    col = 1 + d
    pairs = []
    for j in range(d):
        for k in range(j, d):
            design[:, col] = pts[:, j] * pts[:, k]
            pairs.append((j, k))
            col += 1
    coef, _, rank, _ = np.linalg.lstsq(design, heights, rcond=None)
    if rank < needed:
        raise InsufficientLocalData(needed, found)

    quad = np.zeros((d, d))
    for (j, k), c in zip(pairs, coef[1 + d :]):
        if j == k:
            quad[j, j] = c
        else:
            quad[j, k] = quad[k, j] = 0.5 * c
    return QuadFit(intercept=coef[0], gradient=coef[1 : 1 + d], quad=quad, n_points=found)


def kappa_estimate(theta, quad):
    """Combine the band count with the fitted curvature determinant.

    The negated quadratic term estimates the (positive definite) curvature
    factor, so its determinant is taken with the sign flipped; this matches
    the estimand for every section dimension, including even ones.
    """
    quad = np.asarray(quad, dtype=np.float64)
    det = float(np.linalg.det(-quad))  # 0x0 determinant is 1 by convention
    if det <= 0.0:
        raise NotLocallyStrictlyConcave(
            f"curvature determinant {det:.3g} is not positive; use the rectangle region"
        )
    return theta * det**-0.5


@dataclass(frozen=True)
class KappaEstimate:
    """Everything the limit simulation needs, plus the tuning pair used."""

    theta_hat: float
    quad_matrix: np.ndarray
    det_term: float
    kappa_hat: float
    epsilon: float
    delta: float
    n_eps: int


def estimate_constants(frontier, epsilon, delta):
    """Run both plug-ins on a section frontier and package the result.

    ``kappa_hat`` is NaN when the fitted curvature is not positive definite
    (callers then fall back to the rectangle region driven by theta alone).
    """
    theta, members = estimate_theta(frontier, epsilon)
    fit = fit_local_quadratic(frontier, delta)
    det = float(np.linalg.det(-fit.quad))
    kappa = theta * det**-0.5 if det > 0.0 else float("nan")
    return KappaEstimate(
        theta_hat=theta,
        quad_matrix=fit.quad,
        det_term=det,
        kappa_hat=kappa,
        epsilon=float(epsilon),
        delta=float(delta),
        n_eps=members,
    )


def estimate_theta_reduced(sample, at, epsilon):
    """Band-count estimate on the rotated-output reduction of a q>=2 problem."""
    reduced = reduce_outputs(sample, at)
    frontier = make_reduced_section(reduced)
    return estimate_theta(frontier, epsilon)
