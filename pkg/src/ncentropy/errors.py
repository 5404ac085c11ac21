"""Exception types raised on invalid inputs or violated invariants."""


class InvariantViolation(ValueError):
    """Base class: an input breaks a documented invariant."""


class NotSquare(InvariantViolation):
    pass


class NotHermitian(InvariantViolation):
    pass


class NotPSD(InvariantViolation):
    pass


class NotUnitary(InvariantViolation):
    pass


class ShapeMismatch(InvariantViolation):
    pass


class OutOfRange(InvariantViolation):
    pass


class NotProbabilityVector(InvariantViolation):
    pass


class NotDensity(InvariantViolation):
    pass


class NotOrthogonalInput(InvariantViolation):
    pass


class DegenerateSpectrum(InvariantViolation):
    pass


class IndexOutOfRange(InvariantViolation):
    pass


class InfeasibleShapes(RuntimeError):
    """No nonnegative-integer multiplicity solution was found within the retry budget."""


class UnknownSuite(InvariantViolation):
    pass


class InconsistentData(InvariantViolation):
    pass
