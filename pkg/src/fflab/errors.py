"""Exception types shared across the library."""


class FFLabError(Exception):
    """Base class for all library-specific errors."""


class NotPrime(FFLabError):
    """Claimed characteristic failed the deterministic primality test."""


class NotIrreducible(FFLabError):
    """Defining polynomial is reducible over the prime field."""


class CapExceeded(FFLabError):
    """Requested object is larger than the configured desk-scale cap."""


class DivisionByZero(FFLabError, ZeroDivisionError):
    """Division or inversion with a zero divisor."""


class PointOutsideCarrier(FFLabError):
    """Point does not lie in the carrier of the product group."""


class SpecMismatch(FFLabError):
    """Two dense functions do not share a group layout."""


class HypothesisViolated(FFLabError):
    """Input fails a stated hypothesis; message names the failed clause."""


class FactoredFormRequired(FFLabError):
    """Operation needs the polynomial's factorization and none was supplied."""


class EmptySet(FFLabError):
    """Operation requires a nonempty set."""


class NotSubset(FFLabError):
    """Claimed subset relation does not hold."""


class ZeroPolynomial(FFLabError):
    """Operation is undefined for the identically-zero polynomial."""


class DegeneracyDetected(FFLabError):
    """Bivariate polynomial is a univariate composed with a linear form."""


class PreconditionViolated(FFLabError):
    """Arguments violate a documented precondition."""


class InvariantViolated(FFLabError):
    """An exact inequality that must always hold failed (library bug or false claim)."""


class UnknownExperiment(FFLabError):
    """Experiment id is not in the registry."""


class ConfigInvalid(FFLabError):
    """Run configuration failed validation."""
