"""Exception hierarchy shared by all modules."""


class PolysymError(Exception):
    """Base class for every error raised by the toolkit."""


class Singular(PolysymError, ArithmeticError):
    pass


class RankDeficient(PolysymError, ValueError):
    pass


class NotFullDim(PolysymError, ValueError):
    pass


class NotPointed(PolysymError, ValueError):
    pass


class NotExtreme(PolysymError, ValueError):
    pass


class TooLarge(PolysymError):
    """A guard bound on an enumeration was exceeded."""


class DegreeMismatch(PolysymError, ValueError):
    pass


class RealizationFailure(PolysymError):
    """A graph automorphism could not be realized by a matrix."""


class Decomposable(PolysymError, ValueError):
    pass


class OracleInconsistent(PolysymError):
    pass


class TheoremViolation(PolysymError, AssertionError):
    """An exact structural guarantee failed; indicates a bug or bad input."""


class ParseError(PolysymError, ValueError):
    def __init__(self, message, line=None, token=None):
        self.line = line
        self.token = token
        where = []
        if line is not None:
            where.append(f"line {line}")
        if token is not None:
            where.append(f"token {token!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class UnsupportedFeature(ParseError):
    pass
