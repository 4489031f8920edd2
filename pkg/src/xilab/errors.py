"""Exception hierarchy."""


class XilabError(Exception):
    pass


class DomainError(XilabError, ValueError):
    """Argument outside the domain where the function is defined or supported."""


class PoleError(DomainError):
    def __init__(self, message, location):
        super().__init__(message)
        self.location = location


class DivergenceError(DomainError):
    pass


class AccuracyError(XilabError, ArithmeticError):
    """An internal accuracy check failed."""


class SolverError(XilabError, RuntimeError):
    pass


class ZeroTableError(XilabError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UsageError(XilabError, ValueError):
    pass
