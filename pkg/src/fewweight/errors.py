"""Exception types shared across the package.

Each class carries an ``exit_code`` so the command-line front end can map
failures onto its documented exit statuses without string matching.
"""

from __future__ import annotations


class FewWeightError(Exception):
    """Base class for all package errors."""

    exit_code = 5
    code = "internal"


class SpecError(FewWeightError, ValueError):
    """A parameter tuple violates one of the construction's hypotheses.

    ``condition`` is a short machine-readable tag naming the violated rule,
    e.g. ``"h_divides_qm1"``.
    """

    exit_code = 2
    code = "validation"

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


class CapExceeded(FewWeightError):
    """A field size, codeword count or pair count is above its configured cap."""

    exit_code = 3
    code = "cap_exceeded"

    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what} = {value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


class VerificationMismatch(FewWeightError):
    exit_code = 4
    code = "mismatch"


class IntegralityError(FewWeightError, ArithmeticError):
    """A predicted weight did not come out integral.

    Weights are Hamming weights, so a fractional value means the Gauss period
    source (or the parameters fed to it) is inconsistent. Never rounded.
    """

    exit_code = 5
    code = "non_integral"


class NotApplicable(FewWeightError, ValueError):
    """A formula was requested outside the hypotheses under which it holds."""

    exit_code = 2
    code = "not_applicable"
