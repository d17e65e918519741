"""Conical-hull efficiency estimation with simulated-limit inference.

Estimate directional output-expansion scores of production units under
constant returns-to-scale, simulate the estimator's limit distribution,
and produce bias-corrected estimates with confidence intervals.
"""

from .dea import (
    EvalPoint,
    ObservationSet,
    ReducedProblem,
    Score,
    SectionFrontier,
    crs_score,
    frontier_output,
    make_reduced_section,
    make_section,
    reduce_outputs,
    reduced_crs_score,
    section_for,
    vrs_score,
)
from .geometry import (
    Basis,
    OutputRotation,
    SectionProjection,
    orthonormal_complement,
    project_to_section,
    transform_outputs,
)
from .inference import (
    CrsTestResult,
    EcdfComparison,
    InferenceReport,
    InferenceResult,
    RateExperiment,
    bias_correct,
    crs_test,
    ecdf_compare,
    infer,
    rate_experiment,
)
from .io import read_observations, write_observations
from .kappa import (
    KappaEstimate,
    QuadFit,
    estimate_constants,
    estimate_theta,
    estimate_theta_reduced,
    fit_local_quadratic,
    kappa_estimate,
    unit_ball_volume,
)
from .limit import (
    LimitReplicates,
    RegionSpec,
    hull_height,
    sample_region,
    simulate_replicates,
)
from .lp import LinearProgram, LpSolution, backend_name, solve
from .scenarios import (
    ScenarioSpec,
    default_eval_point,
    generate,
    true_frontier_output,
    true_kappa,
    true_lambda,
    true_theta,
)

__version__ = "0.1.0"
