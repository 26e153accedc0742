"""Exception types shared across the package."""


class ConnectedCMError(Exception):
    """Base class for all library errors."""


class ZeroDegree(ConnectedCMError, ValueError):
    """A degree sequence or distribution places mass at degree 0."""


class OddTotalDegree(ConnectedCMError, ValueError):
    """Total degree is odd, so no perfect stub matching exists."""


class EmptySequence(ConnectedCMError, ValueError):
    """An operation that needs at least one vertex got an empty sequence."""


class SubcriticalDistribution(ConnectedCMError, ValueError):
    """Mean degree <= 2: the degree fixed point has no root in (0, 1)."""


class Degree1Required(ConnectedCMError, ValueError):
    """The rate functional needs positive mass at degree 1."""


class EpsilonTooLarge(ConnectedCMError, ValueError):
    """Truncation at this epsilon destroys supercriticality (mean <= 2)."""


class InvalidMove(ConnectedCMError, ValueError):
    """A switching move references bad edges or a malformed re-pairing."""


class InsufficientSurplus(ConnectedCMError, ValueError):
    """The giant has fewer spare (non-bridge) edges than small components."""


class TooLarge(ConnectedCMError, ValueError):
    """Instance exceeds the exhaustive-enumeration cutoff."""


class NonIntegerResult(ConnectedCMError, ArithmeticError):
    """An exact division that must be integral was not: internal bug."""


class BudgetExhausted(ConnectedCMError, RuntimeError):
    """A rejection sampler ran out of attempts.

    Carries ``attempts`` and, for the giant sampler, a ``report`` with
    near-miss statistics.
    """

    def __init__(self, message: str, attempts: int, report=None):
        super().__init__(message)
        self.attempts = attempts
        self.report = report
