"""Profitability metrics and the partial orderings behind them.

Projects are finite lists of dated transactions (:class:`StepCashFlow`).
NPV functionals come from discount functions; IRR, payback and index
metrics are built on top of them, and scenario sets of functionals induce
the orderings compared by :func:`compare`.
"""

from .cashflow import (
    QMembership,
    StepCashFlow,
    Transaction,
    classify,
    combine,
    cumulative_at,
    is_in_P_plus,
    is_in_P_plusplus,
    negate,
    postpone,
    reduce,
    scale,
    sup_norm,
    truncate,
)
from .discount import (
    ChiMix,
    CompoundAnnual,
    ConstantSensitivity,
    DiscountFunction,
    Exponential,
    GeneralizedHyperbolic,
    GridSampled,
    Impatient,
    Intensity,
    PowerOfBase,
    Truncated,
    Unit,
    dominance_1,
    dominance_2,
    dominance_3,
)
from .indices import (
    TildeBounds,
    default_grid,
    pi,
    ri,
    ri_natural_extension,
    tilde_bounds,
    undiscounted_pi_extension,
)
from .irr import (
    AcceptanceSet,
    ConstantSensitivityFamily,
    DFamily,
    ExponentialFamily,
    GeneralizedHyperbolicFamily,
    PowerFamily,
    acceptance_set,
    g_eval,
    in_natural_domain,
    is_regular,
    natural_extension_rr,
    possesses_irr,
    rr_closed_form,
)
from .ordering import (
    DFamilyRange,
    Finite,
    IntensityFamily,
    Product,
    ReductionFamily,
    ScenarioSet,
    TruncationFamily,
    Union,
    Usury,
    accepts,
    axiom_harness,
    compare,
    compare_convex_hull_finite,
    hull_interval,
    rate_truncation_scenarios,
    sign_compare,
    usury_classify,
)
from .payback import (
    DppDomainClass,
    RefinedDpp,
    classify_dpp_domain,
    dpp,
    dpp_star,
    lex_compare_refined,
    payback_period,
    rdpp_natural_extension,
    refined_dpp,
)
from .results import BoundaryWarning, ComparabilityResult, DomainError, Relation, Verdict
from .valuation import (
    NpvFunctional,
    h_gamma,
    impatient_functional,
    intensity_npv,
    npv,
    npv_left_limit,
    npv_mixed,
    npv_truncated,
)

__version__ = "0.1.0"
