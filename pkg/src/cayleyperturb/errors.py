"""Exception types shared across the package.

Each error carries an ``exit_code`` used by the command-line front end:
2 for parse/usage problems, 3 for violated mathematical preconditions,
4 for resource bounds.
"""


class CayleyPerturbError(Exception):
    exit_code = 3


class ParseError(CayleyPerturbError, ValueError):
    exit_code = 2


class NonSquare(CayleyPerturbError, ValueError):
    exit_code = 2


class IndexOutOfRange(CayleyPerturbError, IndexError):
    exit_code = 2


class SingularMatrix(CayleyPerturbError, ArithmeticError):
    pass


class InvalidSkew(CayleyPerturbError, ValueError):
    pass


class NotOrthogonal(CayleyPerturbError, ValueError):
    pass


class NotSpecialOrthogonal(NotOrthogonal):
    pass


class MinusOneEigenvalue(CayleyPerturbError, ArithmeticError):
    pass


class ModeInapplicable(CayleyPerturbError, ValueError):
    pass


class ZeroPerturbation(CayleyPerturbError, ValueError):
    pass


class ColumnsMismatch(CayleyPerturbError, ValueError):
    pass


class BadRank(CayleyPerturbError, ValueError):
    exit_code = 2


class DimensionTooLarge(CayleyPerturbError, ValueError):
    exit_code = 4


class ConditioningWarning(UserWarning):
    """A floating-point result is too close to singular to be trusted."""
