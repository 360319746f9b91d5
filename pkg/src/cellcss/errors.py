"""Exception types shared across the package.

Every domain error derives from :class:`CellCssError`; the command line maps
that base class to exit status 1.
"""


class CellCssError(Exception):
    """Base class for all domain errors."""


class BadModulus(CellCssError, ValueError):
    def __init__(self, d):
        super().__init__(f"modulus must be an integer >= 2, got {d!r}")
        self.d = d


class NotInLattice(CellCssError):
    def __init__(self, column: int):
        super().__init__(f"target column {column} is not in the integer span of the basis")
        self.column = column


class ShapeMismatch(CellCssError, ValueError):
    pass


class IncoherentGluing(CellCssError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class DimensionTooHigh(CellCssError):
    pass


class UnknownBuiltin(CellCssError):
    pass


class BadParam(CellCssError, ValueError):
    pass


class BadColumnWeight(CellCssError):
    def __init__(self, column: int, weight: int):
        super().__init__(f"column {column} has Hamming weight {weight}; expected 1 or 2")
        self.column = column
        self.weight = weight


class TooLarge(CellCssError):
    def __init__(self, required: int, limit: int):
        super().__init__(f"enumeration needs {required} elements, limit is {limit}")
        self.required = required
        self.limit = limit


class TooShort(CellCssError):
    pass


class LengthMismatch(CellCssError, ValueError):
    pass


class ModulusMismatch(CellCssError, ValueError):
    pass


class TypeMismatch(CellCssError, ValueError):
    pass


class CssInvariantError(CellCssError):
    pass


class AccParseError(CellCssError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class NonCellularComplex(CellCssError):
    pass
