class SiegelError(Exception):
    """Base class for every error raised by the package."""


class ArithmeticDomainError(SiegelError):
    """An exact-arithmetic operation was called outside its domain."""


class SeriesError(SiegelError):
    """A Fourier series operation failed."""


class ParityError(SeriesError):
    """Indices of one series fall into different parity classes."""


class PrecisionError(SeriesError):
    """A result would claim more precision than its inputs support."""


class SeriesDivisionError(SeriesError):
    """Graded division left a nonzero remainder on some layer."""


class NotASquareError(SeriesError):
    """The leading layer of a series is not a perfect square."""


class JacobiFormError(SiegelError):
    """A Jacobi form violates holomorphy or symmetry, or cannot be determined."""


class ContractViolation(SiegelError):
    """A precondition of a singularity certificate does not hold."""


class NonIntegralError(ContractViolation):
    """The form has a non-integral Fourier coefficient."""


class LevelDivisibilityError(ContractViolation):
    """The prime divides the level D_F of the form."""


class LabelError(SiegelError):
    """A lattice label does not match the supported grammar."""


class CatalogError(SiegelError):
    """A catalog entry is inconsistent or a catalog document is malformed."""


class PredictionError(SiegelError):
    """The bracket calculus is degenerate for the requested weights."""


class CacheIntegrityError(SiegelError):
    """A cached series file is malformed or does not match its checksum."""


class CacheLockedError(SiegelError):
    """Another process holds the form cache lock."""
