"""Recency-based preferential-attachment random graphs.

Simulation of fitness-times-recency growth processes, empirical statistics,
closed-form predictions for the analyzed attractiveness kinds, parameter
estimation, and reproducible replica ensembles.
"""

from .attractiveness import (
    AgePower,
    AttractivenessKind,
    ExponentialRecency,
    GeneralFactorized,
    WeightIndex,
    WindowRecency,
    attr_value,
    parse_kind,
)
from .experiments import (
    EdgeListParseError,
    ExperimentConfig,
    ExperimentReport,
    compare_to_theory,
    ingest_edge_list,
    run_ensemble,
)
from .fitting import DecayFit, PowerLawFit, fit_exponential_decay, fit_power_law
from .generator import (
    GrownGraph,
    ModelParams,
    generate,
    generate_naive,
    in_degree_at_death,
    write_edge_list,
    write_qualities,
    write_trace,
)
from .quality import (
    ParetoParams,
    SeedSpec,
    derive_stream,
    pareto_mean,
    pareto_quantile,
    pareto_sample,
)
from .stats import (
    ConditionalDegreeEstimate,
    DegreeHistogram,
    RecencyCurve,
    degree_histogram,
    e_of_T,
    in_degrees,
    indegree_by_quality,
    log_bins,
    out_degrees,
    recency_curve,
    total_degrees,
    weight_deviation,
)
from .theory import (
    TheoryPrediction,
    alpha_constant,
    concentration_bound,
    degree_validity_max,
    predicted_degree_density,
    predicted_eT,
    prediction_for,
)

__version__ = "0.1.0"
