"""Exception hierarchy shared by every module.

Each class names the precondition it reports so that CLI error messages
can surface the violated hypothesis verbatim.
"""


class StfibError(Exception):
    """Base class for all domain errors raised by this package."""


class MismatchedRadicand(StfibError):
    """Two quadratic elements with different radicands were combined."""


class NegativeRadicand(StfibError):
    """A square root of a negative rational was requested."""


class WrongRegime(StfibError):
    """The operation requires a different sign of the discriminant."""


class NegativeDiscriminant(WrongRegime):
    """Binet evaluation needs distinct real roots (positive discriminant)."""


class NonNegativeT(StfibError):
    """The degenerate closed forms require t < 0."""


class ZeroScale(StfibError):
    """The deformation scale must be nonzero."""


class ZeroFactorInFactorial(StfibError):
    """A sequence value {k} = 0 makes the factorial product degenerate."""


class IndexOutOfRange(StfibError):
    """A coefficient index lies outside [0, n]."""


class EmptySeries(StfibError):
    """A truncated series needs at least the constant coefficient."""


class UnitModulusQ(StfibError):
    """The root ratio has modulus one; classification assumes otherwise."""


class HypothesisViolated(StfibError):
    """A certified bound was requested outside its verified hypotheses."""


class DepthTooSmall(StfibError):
    """The summation depth must exceed the candidate denominator index."""


class IntegerU(StfibError):
    """The fractional-base report requires a non-integer rational base."""


class NotConvergentAtOne(StfibError):
    """The series does not converge at argument 1 for these parameters."""


class WidthUnreachable(StfibError):
    """The enclosure loop hit its iteration cap before the target width."""


class NotInStarSet(StfibError):
    """The parameter pair lies outside the required membership region."""


class NonConvergentTail(StfibError):
    """No geometric tail certificate could be established."""
