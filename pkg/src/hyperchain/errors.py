"""Exception hierarchy.

Domain-type errors (bad input, precondition violated) derive from
``DomainError``; numeric failures (a method that could not reach its
tolerance) derive from ``NumericError``.  The CLI maps the two families to
different exit codes.
"""


class HyperchainError(Exception):
    """Base class for every error raised by the package."""


class DomainError(HyperchainError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. Gamma at a non-positive integer)."""


class ParamError(DomainError):
    """Invalid hypergeometric parameters or quadrature preconditions."""


class BranchCutError(DomainError):
    """The point lies on a branch cut of the principal branch."""


class SingularityError(DomainError):
    """A continuation path passes too close to a singular point."""


class CompositionError(DomainError):
    """Variable counts of a chain and a map do not match."""


class ChainSyntaxError(DomainError):
    """Malformed chain DSL input."""


class NumericError(HyperchainError, ArithmeticError):
    """A numerical method failed to meet its accuracy contract."""


class ConvergenceError(NumericError):
    """Series or iteration did not converge within its cap."""


class QuadratureError(NumericError):
    """Quadrature error estimate exceeds the admissible bound."""


class StepError(NumericError):
    """Adaptive ODE stepping could not meet the local tolerance."""


class BlowupError(NumericError):
    """A chain value escaped to a huge magnitude (finite-time blow-up)."""


class CertificationError(NumericError):
    """An interval enclosure could not be refined to the required width."""


class DegenerateDataWarning(UserWarning):
    """Growth fit on data without variation; exponents reported as zero."""
