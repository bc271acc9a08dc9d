"""Exception types. Basis indices in messages and attributes are 1-based."""
from __future__ import annotations


class NilgeomError(ValueError):
    """Base class for every input or precondition failure raised by the package."""


class AntisymmetryViolation(NilgeomError):
    def __init__(self, i: int, j: int, k: int):
        self.indices = (i, j, k)
        super().__init__(f"antisymmetry violated: c^{k}_{{{i}{j}}} != -c^{k}_{{{j}{i}}}")


class JacobiViolation(NilgeomError):
    def __init__(self, i: int, j: int, k: int, l: int):
        self.indices = (i, j, k, l)
        super().__init__(
            f"Jacobi identity violated at (i,j,k,l) = ({i},{j},{k},{l})"
        )


class DimensionMismatch(NilgeomError):
    pass


class IndexOutOfRange(NilgeomError):
    pass


class DegreeOutOfRange(NilgeomError):
    pass


class NotUnimodular(NilgeomError):
    def __init__(self, message: str = "algebra is not unimodular"):
        super().__init__(message)


class ParameterOrderViolation(NilgeomError):
    pass


class NonPositiveParameter(NilgeomError):
    pass


class ZeroDimension(NilgeomError):
    pass


class InputFormatError(NilgeomError):
    pass
