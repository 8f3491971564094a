"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GroupError(Exception):
    """Base class for all errors raised by zcyclic."""


class NotLatinSquare(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NotAssociative(GroupError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        x, y, z = triple
        super().__init__(f"(x*y)*z != x*(y*z) for x={x}, y={y}, z={z}")


class ClosureCapExceeded(GroupError):
    pass


class InvalidParameter(GroupError):
    pass


class IdentityElement(GroupError):
    pass


class PrimeDoesNotDivide(GroupError):
    pass


class NotNormal(GroupError):
    pass


class LatticeCapExceeded(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


class TrivialGroup(GroupError):
    pass


class AbelianGroup(GroupError):
    pass


class InvalidParams(GroupError):
    pass


class UnknownTheoremId(GroupError):
    pass


class ParseError(GroupError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
