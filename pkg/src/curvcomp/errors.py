"""Exception classes shared across the package.

The CLI maps these onto exit codes: bad input / unusable configuration is
exit 2, a violated geometric hypothesis (or a failed verified inequality)
is exit 1.
"""


class CurvCompError(Exception):
    """Base class for all package-specific errors."""


class InputError(CurvCompError, ValueError):
    """Invalid argument, domain violation, or malformed scene input (exit 2)."""


class ResolutionError(CurvCompError):
    """A sampled construction could not be resolved at the requested grid size (exit 2)."""


class HypothesisError(CurvCompError):
    """A hypothesis of the inequality under test does not hold for the scene (exit 1)."""


class FeasibilityError(HypothesisError):
    """No comparison configuration exists for the given data, e.g. the base
    point sits deeper than the comparison ball's radius (exit 1)."""
