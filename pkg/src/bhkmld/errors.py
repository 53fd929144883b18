"""Exception hierarchy shared by every module."""

from __future__ import annotations


class BhkError(ValueError):
    """Base class for all validation failures raised by bhkmld."""


class PotentialSyntaxError(BhkError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DelsarteError(BhkError):
    """The exponent matrix is not of Delsarte type or fails the atom normal form."""


class SingularMatrixError(BhkError):
    pass


class ChargeError(BhkError):
    """Charges are non-positive or the weights do not normalize."""


class PreconditionError(BhkError):
    """A hypothesis of the mld formula (CY, well-formed, quasismooth, shape) is not certified."""


class GroupTooLargeError(BhkError):
    pass
