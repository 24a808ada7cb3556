"""Exception types shared across the package."""


class IcefishError(Exception):
    """Base class for all errors raised by icefish."""


class BasisIndexError(IcefishError, IndexError):
    """A basis function index outside the admissible range was requested."""


class NumericalError(IcefishError):
    """A numerical procedure failed (factorization, convergence, poles)."""


class NotPositiveDefiniteError(NumericalError):
    pass


class IndefiniteProblemError(NumericalError):
    pass


class PoleError(NumericalError):
    """The map T has a pole at the requested Bond number."""


class NoFixedPointError(NumericalError):
    pass


class OracleAccuracyError(NumericalError):
    pass
