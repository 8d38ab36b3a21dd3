"""Dependability models of shuffle-exchange networks (SEN and SEN+).

Builds dynamic fault trees (DFT) and dynamic reliability block diagrams
(DRBD) with warm spares, evaluates them exactly, and checks the exact
values against Monte Carlo simulation and exhaustive state enumeration.
"""

from senrel.dist import DormancyFactor, FailureDistribution, cdf, make_rng, sample_lifetime
from senrel.evaluate import (
    Curve,
    WspParams,
    eval_curve,
    prob_fail,
    reliability,
    wsp_fail_prob,
    wsp_fail_prob_quad,
)
from senrel.model import (
    BasicEvent,
    Block,
    NAnd,
    NOr,
    Parallel,
    RWsp,
    Series,
    ValidationError,
    ValidationReport,
    Wsp,
    component_ids,
    dft_to_drbd,
    drbd_to_dft,
    validate,
)
from senrel.oracle import McEstimate, enumerate_exact, mc_curve, mc_estimate
from senrel.sen import (
    Analysis,
    Formalism,
    SenModelSpec,
    Spares,
    StructureCounts,
    Variant,
    build_model,
    preset_paper_128,
    sen_counts,
)

__version__ = "0.1.0"
