"""Few-weight trace codes over finite fields.

Builds the two-part trace codes with defining set ``{w^(h i)}``, computes
their weight distributions by enumeration and from Gauss periods, and checks
Griesmer optimality, minimality and dual distance.
"""

from .analysis import (
    WeightDistribution,
    dual_distance_class,
    griesmer_report,
    minimal_codewords_bruteforce,
    minimality_report,
    minimum_distance_lower_bound,
    predicted_distribution,
    sss_classification,
    weight_distribution_bruteforce,
)
from .code import Code, CodeSpec, build_code, build_trace_code_CD, evaluate_codeword, validate_spec
from .cyclotomy import CyclotomicInteger, gauss_periods_closed_form, gauss_periods_direct
from .errors import CapExceeded, FewWeightError, IntegralityError, NotApplicable, SpecError
from .finite_field import FieldCtx, FieldElement, build_field, discrete_log, subfield_view, trace

__version__ = "0.1.0"
