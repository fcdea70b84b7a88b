"""Exact finite population spaces, sampler mappings and iid checks."""

from .constructions import (
    IntervalPreimage,
    continuous_construction,
    continuous_digits,
    digits_decompose,
    discrete_construction,
    product_construction,
    recompose,
    tuple_preimage_interval,
)
from .iid import IidReport, JointValueDistribution, check_iid, induced_joint, marginal
from .measure import (
    Distribution,
    FinitePopulationSpace,
    RandomVariable,
    cdf,
    event_probability,
    format_rational,
    make_classical,
    parse_rational,
    pushforward,
)
from .sampler import (
    FiniteExperimentSpace,
    FiniteSampler,
    SimplenessReport,
    classical_tuple_check,
    exhaustive_rectangle_check,
    rectangle_probability,
    simpleness_report,
    subset_selection_probability,
    tuple_distribution,
    uniform_experiment,
)

__version__ = "0.1.0"
