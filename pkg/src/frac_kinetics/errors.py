"""Exception types shared across the package.

All input-validation failures derive from :class:`DomainError`, which itself
derives from ``ValueError`` so that callers who do not care about the finer
distinctions can catch the usual builtin.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """A gamma-type function was evaluated at (or forced through) a pole."""


class RangeError(DomainError):
    """An argument lies outside the validated numerical range.

    Raised both for the documented series caps (Mittag-Leffler ``|z|``,
    Struve ``x``) and for Laplace-domain evaluation outside the convergence
    region of the geometric resummation.
    """


class SingularStepError(RuntimeError):
    """The implicit update of the Volterra marching scheme became singular.

    Cannot occur for positive rate constants and positive fractional order;
    guarded against anyway so that a bad parameter combination fails loudly
    instead of dividing by ~0.
    """
