"""Stochastic-dominance toolkit for infinite-mean risks.

Heavy-tailed distribution zoo, membership tests for the reciprocal-concave-
tail classes, majorization machinery, stable and compound-Poisson samplers,
and Monte-Carlo plus exact dominance verification engines, all behind a
single reproducible-seed CLI (``tailorder``).
"""

__version__ = "0.1.0"

from .class_h import (
    GridSpec,
    Membership,
    MembershipVerdict,
    Method,
    Witness,
    analytic_h_membership,
    convex_transform,
    deductible,
    density_form_check,
    empirical_h_probe,
    hstar_check,
    max_of,
    mixture,
    numeric_h_check,
    power_transform,
    verify_witness,
)
from .compound import CompoundPoissonSpec, cp_sd_verdict, sample_cp, weighted_cp_mixture
from .distributions import (
    AbsCauchy,
    AffineDistribution,
    Distribution,
    EmpiricalDistribution,
    FellerPareto,
    Frechet,
    InverseBurr,
    InverseGamma,
    LogCauchy,
    LogPareto,
    MonotoneMap,
    Pareto,
    PointMass,
    Stoppa,
    exp_map,
    from_spec,
    identity_map,
    power_map,
)
from .dominance import (
    DominanceReport,
    Ecdf,
    QuadratureSpec,
    Verdict,
    adaptive_gauss_legendre,
    dkw_epsilon,
    exact_two_weight_tail,
    figure_data,
    mc_dominance_test,
    sd_star_test,
    suff_condition_scan,
)
from .errors import (
    ConditionFailedError,
    DomainError,
    LengthMismatchError,
    NoDensityError,
    NotMajorizedError,
    QuadratureFailureError,
    SpecParseError,
    TailOrderError,
    UnsupportedFamilyError,
    WeightError,
)
from .majorization import TTransform, majorizes, schur_concavity_probe, t_transform_chain
from .rng import RngStream
from .stable import (
    AbsStable,
    StableParams,
    WeightedSumLaw,
    characteristic_function,
    sample_stable,
    sd_classification,
    weighted_sum_law,
)
