"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class so
that the CLI can map validation problems and numerical problems to distinct
exit codes without string matching.
"""

__all__ = [
    "DiamondWiretapError",
    "ParameterError",
    "DomainError",
    "EmptyFeasibleSet",
    "BudgetInfeasible",
    "EmptyInterval",
    "NoSignChange",
    "SingularCovariance",
    "InvalidPmf",
    "AsymmetricParams",
]


class DiamondWiretapError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(DiamondWiretapError, ValueError):
    """Channel parameters outside their admissible ranges."""


class DomainError(DiamondWiretapError, ValueError):
    """A correlation coefficient outside the domain of a rate function."""


class EmptyFeasibleSet(DiamondWiretapError):
    """No correlation satisfies the randomness-budget constraint."""


class BudgetInfeasible(DiamondWiretapError):
    """The requested correlation violates the randomness-budget constraint."""


class EmptyInterval(DiamondWiretapError, ValueError):
    """An optimization interval with lower end above the upper end."""


class NoSignChange(DiamondWiretapError):
    """Root bracketing failed: the function has equal signs at both ends."""


class SingularCovariance(DiamondWiretapError):
    """A covariance block needed for a mutual information is singular."""


class InvalidPmf(DiamondWiretapError, ValueError):
    """A probability table with negative mass or rows not summing to one."""


class AsymmetricParams(DiamondWiretapError, ValueError):
    """An operation that requires symmetric parameters got unequal ones."""
