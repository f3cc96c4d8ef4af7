"""Exception hierarchy.

Every domain error raised by this package derives from :class:`PowerclassError`
so callers (and the CLI) can distinguish bad mathematical input from bugs.
"""


class PowerclassError(Exception):
    """Base class for all domain errors."""


class ParamsMismatchError(PowerclassError):
    """Operands were built over different (p, n, m) parameters."""


class LevelMismatchError(PowerclassError):
    """Operands live in group rings of different quotient levels."""


class IndexOrderError(PowerclassError):
    """Indices violate the required ordering (e.g. j <= i <= n)."""


class NotInU1Error(PowerclassError):
    """A twist was required to satisfy d = 1 (mod p)."""


class IllDefinedError(PowerclassError):
    """Evaluation sigma -> d is not a well-defined map mod p^m."""


class NotPrimePowerError(PowerclassError):
    """The modulus of a chain-ring computation is not a prime power."""


class BadVectorError(PowerclassError):
    """A norm vector has entries out of range or violates a_0 < n."""


class MTooSmallError(PowerclassError):
    """The torsion-certificate machinery needs coefficient exponent m >= 2."""


class SubgroupOrderError(PowerclassError):
    """S <= H was violated (subgroup exponents out of order)."""


class UnknownGeneratorError(PowerclassError):
    """A named generator is not declared by the presentation."""


class PresentationMismatchError(PowerclassError):
    """Module elements belong to different presentations."""


class LengthMismatchError(PowerclassError):
    """Vectors that must share a length do not."""


class IndexRangeError(PowerclassError):
    """An index fell outside a vector."""


class NotInterpolatedError(PowerclassError):
    """A vector fails the monotonicity required of interpolated vectors."""


class ImpossibleBPatternError(PowerclassError):
    """A b-vector contains a pattern no field can realize."""


class ExcludedCaseError(PowerclassError):
    """The configuration p = 2 with omega = 1 < nu is out of scope."""


class Hypothesis2ViolatedError(PowerclassError):
    """For p = 2 the minimality conditions require d = 1 (mod 4)."""


class BadShapeError(PowerclassError):
    """An integer does not have the shape 1 + p^i * x demanded by the caller."""


class NotCoprimeError(PowerclassError):
    """A Galois exponent must be coprime to the conductor."""


class NotInLevelError(PowerclassError):
    """A field element is not fixed by the required subgroup."""


class NotCyclotomicError(PowerclassError):
    """The construction needs a cyclotomic tower (K = F(zeta_{p^nu}))."""


class NotARepresentativeError(PowerclassError):
    """A witness tuple fails the defining norm-pair equations."""


class BadTwistError(PowerclassError):
    """A twist d must lie in 1 + pZ."""


class InvalidTowerError(PowerclassError):
    """A tower specification is inconsistent (bad sigma order, conductor...)."""
