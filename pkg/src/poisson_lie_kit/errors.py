"""Exception hierarchy shared by all modules."""


class PoissonLieError(Exception):
    """Base class for every error raised by the package."""


class DimensionMismatch(PoissonLieError, ValueError):
    pass


class NotAntisymmetric(PoissonLieError, ValueError):
    pass


class UnknownAlgebra(PoissonLieError, KeyError):
    pass


class NotSkew(PoissonLieError, ValueError):
    pass


class NotSkewUpper(PoissonLieError, ValueError):
    pass


class NotSkewDoubled(PoissonLieError, ValueError):
    pass


class ThetaNotInvariant(PoissonLieError, ValueError):
    pass


class SizeGuardExceeded(PoissonLieError, ValueError):
    pass


class AlgebraMismatch(PoissonLieError, ValueError):
    pass


class NonFiniteInput(PoissonLieError, ValueError):
    pass


class SingularElement(PoissonLieError, ValueError):
    pass


class BasisDegenerate(PoissonLieError, ValueError):
    pass


class ElementOutsideGroup(PoissonLieError, ValueError):
    """Conjugation by the element does not preserve the span of the basis."""


class CYBEViolated(PoissonLieError, ValueError):
    pass


class InputError(PoissonLieError, ValueError):
    """Base for problems with a user-supplied input document."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class IndexOutOfRange(InputError):
    pass


class DuplicateEntry(InputError):
    pass


class NonRationalValue(InputError):
    pass


class MissingField(InputError):
    pass
