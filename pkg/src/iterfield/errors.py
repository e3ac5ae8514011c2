"""Exception hierarchy.

Every error raised on purpose by the library derives from ``IterFieldError``.
Subclasses of ``PreconditionError`` signal that a mathematical precondition
failed (the CLI maps those to exit code 3).
"""


class IterFieldError(Exception):
    pass


class PreconditionError(IterFieldError, ValueError):
    pass


class NotMonic(PreconditionError):
    pass


class Reducible(PreconditionError):
    pass


class ZeroDegree(PreconditionError):
    pass


class NoRealRoot(PreconditionError):
    pass


class ZeroRadicand(PreconditionError):
    pass


class FieldMismatch(IterFieldError, TypeError):
    pass


class DivisionByZero(IterFieldError, ZeroDivisionError):
    pass


class BothZero(PreconditionError):
    pass


class ZeroDenominator(PreconditionError, ZeroDivisionError):
    pass


class EqualPoints(PreconditionError):
    pass


class ConstantInput(PreconditionError):
    pass


class OffCurve(PreconditionError):
    pass


class NotTwoTorsion(PreconditionError):
    pass


class SingularCurve(PreconditionError):
    pass


class DiagonalizableInput(PreconditionError):
    pass


class NotDiagonalizable(PreconditionError):
    pass


class SingularMatrix(PreconditionError):
    pass


class NoConstructibleRoot(PreconditionError):
    pass


class ScalarPower(PreconditionError):
    """The n-th power is scalar, so it does not pin down the eigenvectors."""


class InconsistentDecomposition(IterFieldError, ArithmeticError):
    pass
