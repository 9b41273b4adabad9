"""Weighted (L^p, lambda, mu)-based gradual semantics and their inverses."""

from .dynamics import (
    Aggregator,
    Constant,
    FixpointResult,
    GeometricMean,
    Max,
    PNormCombine,
    Projection,
    Scale,
    ScoringBase,
    WedgeNorm,
    WeightedSum,
    apply_dynamics,
    check_order_reversing,
    eval_aggregator,
    fixpoint,
)
from .estimator import GradualSemantics, NotConvergedError
from .framework import (
    Framework,
    FrameworkError,
    WeightedFramework,
    attackers,
    build_framework,
    load_waf,
    remote_matrix,
    save_waf,
    support,
)
from .inverse import (
    InversionReport,
    ScalingReport,
    invert,
    invert_closed_form,
    membership,
    radial_probe,
    roundtrip,
    scale_to_feasible,
)
from .lpfamily import SemanticsSpec, make_kappa, make_phi, solve_scheme
from .norms import INFINITY, lp_norm, wedge
from .semantics import cb, eb, get_spec, hc, hc_remote, mb, oracle_iterate, ranking

__version__ = "0.1.0"
