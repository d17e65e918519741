"""Bias-corrected estimates, confidence intervals, and the CRS-vs-VRS test.

The raw conical-hull score is biased downward (the estimated hull sits
inside the truth).  Simulated limit replicates are nonpositive draws of
the rate-scaled error, so subtracting their scaled mean lifts the
estimate, and their order statistics give percentile intervals.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import dea, kappa, limit, scenarios
from ._parallel import pmap
from .errors import InsufficientReplicates, InvalidGrid, EmptyInput

DEFAULT_B = 2000
DEFAULT_ALPHA = 0.05

# spawn-key tags keeping seed substreams of the pipeline stages disjoint
_TAG_SIM = 1
_TAG_SUBSAMPLE = 2
_TAG_RATE = 3


def _child_seed(seed, *key):
    """Deterministic seed substream for a pipeline stage."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(
            entropy=seed.entropy, spawn_key=tuple(seed.spawn_key) + key
        )
    return np.random.SeedSequence(seed, spawn_key=key)


@dataclass(frozen=True)
class InferenceResult:
    raw: float
    bias_corrected: float
    ci_low: float
    ci_high: float
    alpha: float
    b: int
    rate_exponent: float


def _order_index(b, share):
    """Nearest-integer order-statistic index, clamped to [1, b]."""
    return min(b, max(1, int(math.floor(b * share + 0.5))))


def bias_correct(raw, replicates, n, p_eff, y0_norm=1.0, alpha=DEFAULT_ALPHA):
    """Mean-shift correction and percentile interval from limit replicates.

    ``raw`` minus the rate-scaled replicate mean (divided by ``y0_norm``
    when correcting a score rather than an output level) is the corrected
    estimate; interval endpoints use descending order statistics at the
    alpha/2 shares and are returned sorted.
    """
    values = np.asarray(replicates.values, dtype=np.float64)
    b = values.size
    if b < 2:
        raise InsufficientReplicates(f"need at least 2 replicates, got {b}")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    rate = 2.0 / (p_eff + 1)
    scale = n ** (-rate) / y0_norm
    corrected = raw - scale * float(values.mean())
    descending = np.sort(values)[::-1]
    lo_end = raw - scale * descending[_order_index(b, alpha / 2.0) - 1]
    hi_end = raw - scale * descending[_order_index(b, 1.0 - alpha / 2.0) - 1]
    return InferenceResult(
        raw=float(raw),
        bias_corrected=float(corrected),
        ci_low=float(min(lo_end, hi_end)),
        ci_high=float(max(lo_end, hi_end)),
        alpha=float(alpha),
        b=b,
        rate_exponent=rate,
    )


@dataclass(frozen=True)
class InferenceReport:
    """Full payload of one bias-correction run at an evaluation point."""

    n: int
    p: int
    q: int
    p_eff: int
    y0_norm: float
    result: InferenceResult
    constants: kappa.KappaEstimate
    region_kind: str  # paraboloid | rectangle | degenerate
    rectangle_fallback: bool
    degenerate_theta: bool
    invalid_count: int
    seed: object
    workers_invariant: bool = True


def default_bandwidth(origin_height, n, p_eff):
    """Frontier-scale bandwidth shrinking slowly with n (override freely)."""
    return 0.25 * origin_height * n ** (-1.0 / (p_eff + 3))


def infer(sample, at, epsilon=None, delta=None, b=DEFAULT_B, alpha=DEFAULT_ALPHA,
          seed=0, workers=1):
    """Score, estimate the limit-law constants, simulate, and correct.

    A nonpositive fitted curvature determinant switches the simulation to
    the rectangle region (recorded, not an error).  A zero band count makes
    the run degenerate: the correction is skipped and the interval
    collapses to the raw score.
    """
    score = dea.crs_score(sample, at)
    frontier, p_eff, y0_norm = dea.section_for(sample, at)
    origin = frontier.origin_height()
    if epsilon is None:
        epsilon = default_bandwidth(origin, sample.n, p_eff)
    if delta is None:
        delta = epsilon

    theta, members = kappa.estimate_theta(frontier, epsilon)
    degenerate = theta <= 0.0
    fallback = False
    if degenerate:
        constants = kappa.KappaEstimate(
            theta_hat=theta, quad_matrix=np.zeros((p_eff - 1, p_eff - 1)),
            det_term=float("nan"), kappa_hat=float("nan"),
            epsilon=float(epsilon), delta=float(delta), n_eps=members,
        )
        replicates = limit.LimitReplicates(values=np.zeros(b), invalid_count=0, seed=seed)
        region_kind = "degenerate"
    else:
        fit = kappa.fit_local_quadratic(frontier, delta)
        det = float(np.linalg.det(-fit.quad))
        kappa_hat = theta * det**-0.5 if det > 0.0 else float("nan")
        constants = kappa.KappaEstimate(
            theta_hat=theta, quad_matrix=fit.quad, det_term=det, kappa_hat=kappa_hat,
            epsilon=float(epsilon), delta=float(delta), n_eps=members,
        )
        if det > 0.0:
            # dim-1 sections carry no curvature; their band is already flat
            region_kind = limit.PARABOLOID if p_eff > 1 else limit.RECTANGLE
            scale = kappa_hat
        else:
            region_kind = limit.RECTANGLE
            scale = theta
            fallback = True
        spec = limit.RegionSpec(kind=region_kind, dim=p_eff, scale=scale, n=sample.n)
        replicates = limit.simulate_replicates(
            spec, b, _child_seed(seed, _TAG_SIM), workers=workers
        )

    result = bias_correct(score.lambda_hat, replicates, sample.n, p_eff, y0_norm, alpha)
    return InferenceReport(
        n=sample.n, p=sample.p, q=sample.q, p_eff=p_eff, y0_norm=y0_norm,
        result=result, constants=constants, region_kind=region_kind,
        rectangle_fallback=fallback, degenerate_theta=degenerate,
        invalid_count=replicates.invalid_count, seed=seed,
    )


@dataclass(frozen=True)
class CrsTestResult:
    rho_n: float
    per_unit_ratios: np.ndarray
    p_value: float = None
    subsample_size: int = None


def _rho_statistic(sample):
    ratios = np.empty(sample.n)
    for i in range(sample.n):
        at = dea.EvalPoint(x0=sample.inputs[i], y0=sample.outputs[i])
        crs = dea.crs_score(sample, at).lambda_hat
        vrs = dea.vrs_score(sample, at).lambda_hat  # own point: always feasible
        # cone dominance holds exactly; clip solver roundoff below 1
        ratios[i] = max(crs / vrs, 1.0)
    return float(ratios.mean() - 1.0), ratios


def _subsample_task(args):
    inputs, outputs, m, child = args
    rng = np.random.default_rng(child)
    idx = rng.permutation(inputs.shape[0])[:m]
    sub = dea.ObservationSet(inputs=inputs[idx], outputs=outputs[idx])
    return _rho_statistic(sub)[0]


def crs_test(sample, pvalue_draws=0, seed=0, workers=1):
    """Mean excess of cone over convex-hull scores at the data points.

    With ``pvalue_draws`` > 0, an experimental m-out-of-n subsampling
    p-value is attached: each subsample statistic is recentered by the
    full-sample statistic and compared against it.
    """
    rho, ratios = _rho_statistic(sample)
    if pvalue_draws <= 0:
        return CrsTestResult(rho_n=rho, per_unit_ratios=ratios)
    m = min(max(1, sample.n - 1), math.ceil(sample.n ** (2.0 / 3.0)))
    children = _child_seed(seed, _TAG_SUBSAMPLE).spawn(pvalue_draws)
    tasks = [(sample.inputs, sample.outputs, m, child) for child in children]
    stats = np.array(pmap(_subsample_task, tasks, workers))
    p_value = float(np.mean(stats - rho >= rho))
    return CrsTestResult(rho_n=rho, per_unit_ratios=ratios, p_value=p_value, subsample_size=m)


@dataclass(frozen=True)
class RateExperiment:
    slope: float
    n_grid: tuple
    medians: np.ndarray
    lambda0: float


def _rate_task(args):
    spec, at, child = args
    sample = scenarios.generate(
        scenarios.ScenarioSpec(
            kind=spec.kind, n=spec.n, inefficiency_rate=spec.inefficiency_rate,
            seed=child, input_low=spec.input_low, input_high=spec.input_high,
            slope=spec.slope,
        )
    )
    return dea.crs_score(sample, at).lambda_hat


def rate_experiment(base_spec, n_grid, reps, at=None, workers=1):
    """Log-log slope of the median absolute score error against n."""
    n_grid = tuple(int(n) for n in n_grid)
    if len(set(n_grid)) < 3 or any(n < 1 for n in n_grid) or reps < 1:
        raise InvalidGrid("need at least three distinct positive sizes and reps >= 1")
    if at is None:
        at = scenarios.default_eval_point(base_spec)
    lambda0 = scenarios.true_lambda(base_spec, at)

    medians = np.empty(len(n_grid))
    for gi, n in enumerate(n_grid):
        children = _child_seed(base_spec.seed, _TAG_RATE, gi).spawn(reps)
        spec_n = scenarios.ScenarioSpec(
            kind=base_spec.kind, n=n, inefficiency_rate=base_spec.inefficiency_rate,
            seed=base_spec.seed, input_low=base_spec.input_low,
            input_high=base_spec.input_high, slope=base_spec.slope,
        )
        lams = np.array(pmap(_rate_task, [(spec_n, at, ch) for ch in children], workers))
        medians[gi] = np.median(np.abs(lams - lambda0))
    slope = float(np.polyfit(np.log(np.asarray(n_grid, float)), np.log(medians), 1)[0])
    return RateExperiment(slope=slope, n_grid=n_grid, medians=medians, lambda0=lambda0)


@dataclass(frozen=True)
class EcdfComparison:
    distance: float
    grid: np.ndarray
    ecdf_first: np.ndarray
    ecdf_second: np.ndarray


def ecdf_compare(first, second):
    """Sup-distance between two empirical CDFs plus a paired plotting table."""
    first = np.sort(np.asarray(first, dtype=np.float64).reshape(-1))
    second = np.sort(np.asarray(second, dtype=np.float64).reshape(-1))
    if first.size == 0 or second.size == 0:
        raise EmptyInput("both value lists must be nonempty")
    grid = np.unique(np.concatenate([first, second]))
    cdf_first = np.searchsorted(first, grid, side="right") / first.size
    cdf_second = np.searchsorted(second, grid, side="right") / second.size
    distance = float(np.max(np.abs(cdf_first - cdf_second)))
    return EcdfComparison(distance=distance, grid=grid, ecdf_first=cdf_first,
                          ecdf_second=cdf_second)
