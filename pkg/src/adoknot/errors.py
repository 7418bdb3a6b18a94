"""Exception types shared across the package."""


class AdoError(Exception):
    """Base class for all engine errors."""


class NonPureScale(AdoError):
    """A value still carries a nonzero square-weight prefactor where none is allowed."""


class ParityError(AdoError):
    """Laurent exponents have mixed parity and cannot be converted to the x-variable."""


class ZeroPolynomial(AdoError):
    """Degree data requested for the zero polynomial."""


class NonScalarTwist(AdoError):
    """A curl composition did not produce a scalar multiple of the identity."""


class NonScalarResult(AdoError):
    """The cut-open closure operator is not a scalar multiple of the identity."""


class DecompositionFailure(AdoError):
    """The ribbon top-term decomposition has entries outside the allowed degree window."""


class CalibrationFailure(AdoError):
    """No convention assignment satisfies the unknot/Hopf/trefoil gates."""


class InconsistentResidues(AdoError):
    """Residues from different root orders admit no common lift."""


class NotHomogeneous(AdoError):
    """A braid word mixes signs on one generator or omits a generator."""


class RecordInvalid(AdoError):
    """A catalog record contradicts its own braid word."""


class MissingGenus(AdoError):
    """A fibredness check was requested for a record without genus metadata."""
