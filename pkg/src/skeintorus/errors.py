"""Exception hierarchy for skeintorus."""

__all__ = [
    "SkeinTorusError",
    "ExactDivisionFailure",
    "ContextMismatch",
    "TorusMismatch",
    "MatrixScaleMismatch",
    "MissingLabel",
    "InvalidQuasitriangulation",
    "NotFlippable",
    "NegativeFlippedExponent",
    "NotBoundaryEdge",
    "NotUnmarked",
    "NonInvertibleImage",
    "ParseError",
    "UnknownGenerator",
    "EmptySurface",
]


class SkeinTorusError(Exception):
    """Base class for all errors raised by this package."""


class ExactDivisionFailure(SkeinTorusError, ArithmeticError):
    """A division that must be exact left a remainder."""


class ContextMismatch(SkeinTorusError, ValueError):
    """Operands live in incompatible rings or algebras."""


class TorusMismatch(ContextMismatch):
    """Two torus elements have different commutation matrices."""


class MatrixScaleMismatch(SkeinTorusError, ValueError):
    pass


class MissingLabel(SkeinTorusError, KeyError):
    pass


class InvalidQuasitriangulation(SkeinTorusError, ValueError):
    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class NotFlippable(SkeinTorusError, ValueError):
    pass


class NegativeFlippedExponent(SkeinTorusError, ValueError):
    pass


class NotBoundaryEdge(SkeinTorusError, ValueError):
    pass


class NotUnmarked(SkeinTorusError, ValueError):
    pass


class NonInvertibleImage(SkeinTorusError, ValueError):
    pass


class ParseError(SkeinTorusError, ValueError):
    """Syntax error in an expression or surface file, with a position."""

    def __init__(self, message, position=None, line=None):
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif position is not None:
            where = f" (at offset {position})"
        super().__init__(message + where)
        self.position = position
        self.line = line


class UnknownGenerator(ParseError):
    pass


class EmptySurface(ParseError):
    pass
