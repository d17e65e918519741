"""Sampling of the limit-law regions and Monte Carlo hull heights.

The estimator's centered, rate-scaled error behaves like the height at the
origin of the convex hull of n uniform points under a paraboloid band
(curved frontier) or inside a flat slab (linear frontier).  Both regions
are parameterized by a single positive scale constant and have volume
``n / scale``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRegion, EmptyInput, OutsideHull
from .lp import INFEASIBLE, OPTIMAL, LinearProgram, solve

PARABOLOID = "paraboloid"
RECTANGLE = "rectangle"

_RETRY_CAP = 100


@dataclass(frozen=True)
class RegionSpec:
    """Geometry of the limit-law sampling region.

    ``dim`` is the effective input dimension (p for one output, p+q-1
    otherwise); ``scale`` the local frontier constant (curved: curvature-
    normalized density; linear: plain density); ``n`` the sample size whose
    estimator is being mimicked.
    """

    kind: str
    dim: int
    scale: float
    n: int

    def __post_init__(self):
        if self.kind not in (PARABOLOID, RECTANGLE):
            raise ValueError(f"unknown region kind {self.kind!r}")
        if not (np.isfinite(self.scale) and self.scale > 0.0):
            raise ValueError("region scale must be positive and finite")
        if self.dim < 1 or self.n < 1:
            raise ValueError("region needs dim >= 1 and n >= 1")

    def side(self):
        """Edge length of the cube the in-plane coordinates live on."""
        return (self.n / self.scale) ** (1.0 / (self.dim + 1))

    def depth(self):
        """Vertical thickness of the band below the paraboloid / slab."""
        return (self.n / self.scale) ** (2.0 / (self.dim + 1))

    def volume(self):
        return self.side() ** (self.dim - 1) * self.depth()


@dataclass(frozen=True)
class LimitReplicates:
    """B simulated hull heights at the origin (all nonpositive)."""

    values: np.ndarray
    invalid_count: int
    seed: object


def sample_region(spec, count, rng):
    """Draw ``count`` points uniformly on the region; returns ``(v2, w)``.

    No rejection needed: the in-plane part is uniform on a cube and the
    height is uniform on a vertical segment whose position depends only on
    the in-plane coordinates.
    """
    half = 0.5 * spec.side()
    v2 = rng.uniform(-half, half, size=(count, spec.dim - 1))
    depth = spec.depth()
    if spec.kind == PARABOLOID:
        w = -np.sum(v2 * v2, axis=1) - rng.uniform(0.0, 1.0, size=count) * depth
    else:
        w = -rng.uniform(0.0, 1.0, size=count) * depth
    return v2, w


def hull_height(v2, w, at_v2):
    """Height of the convex hull of ``(v2, w)`` points above ``at_v2``."""
    v2 = np.asarray(v2, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if w.size == 0:
        raise EmptyInput("no points to form a hull")
    at_v2 = np.asarray(at_v2, dtype=np.float64).reshape(-1)
    n = w.shape[0]
    eq = np.vstack([v2.T, np.ones(n)])
    rhs = np.concatenate([at_v2, [1.0]])
    sol = solve(LinearProgram(w, eq, rhs))
    if sol.status == INFEASIBLE:
        raise OutsideHull("location outside the hull of the sampled points")
    if sol.status != OPTIMAL:  # pragma: no cover - hull program is bounded
        raise RuntimeError(f"hull program unexpectedly {sol.status}")
    return sol.value


def _one_replicate(spec, child_seed):
    rng = np.random.default_rng(child_seed)
    origin = np.zeros(spec.dim - 1)
    invalid = 0
    for _ in range(_RETRY_CAP):
        v2, w = sample_region(spec, spec.n, rng)
        try:
            return hull_height(v2, w, origin), invalid
        except OutsideHull:
            invalid += 1
    raise DegenerateRegion(
        f"origin missed the hull {_RETRY_CAP} times; n={spec.n} too small for dim={spec.dim}"
    )


def _replicate_chunk(args):
    spec, children = args
    values = np.empty(len(children))
    invalid = 0
    for i, child in enumerate(children):
        values[i], bad = _one_replicate(spec, child)
        invalid += bad
    return values, invalid


def simulate_replicates(spec, b, seed, workers=1):
    """Simulate ``b`` hull heights at the origin, one fresh region each.

    Replicate i draws from a child stream spawned deterministically from
    ``seed``, so results are identical for any ``workers`` value.
    Replicates whose hull misses the origin are redrawn (counted in
    ``invalid_count``).
    """
    if b < 1:
        raise ValueError("need at least one replicate")
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = root.spawn(b)

    if workers and workers > 1 and b > 1:
        nchunks = min(b, workers * 4)
        bounds = np.linspace(0, b, nchunks + 1).astype(int)
        tasks = [(spec, children[lo:hi]) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_replicate_chunk, tasks))
        values = np.concatenate([p[0] for p in parts])
        invalid = sum(p[1] for p in parts)
    else:
        values, invalid = _replicate_chunk((spec, children))

    return LimitReplicates(values=values, invalid_count=invalid, seed=seed)
