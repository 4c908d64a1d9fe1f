"""Exception types raised across the package."""


class ConvergenceFailure(RuntimeError):
    """Newton iteration (and its grid-scan fallback) did not converge."""

    def __init__(self, message, n=None):
        super().__init__(message if n is None else f"n={n}: {message}")
        self.n = n


class CertificationFailure(RuntimeError):
    """Argument-principle count of a cell differs from one."""

    def __init__(self, message, n=None, winding=None):
        super().__init__(message if n is None else f"n={n}: {message}")
        self.n = n
        self.winding = winding


class NoZerosError(ValueError):
    """The free particle (v = 0) Jost function has no zeros."""


class EmptyCatalog(ValueError):
    pass


class ZeroImaginaryPart(ValueError):
    pass


class OnAxisZeroWidth(ValueError):
    pass


class DomainError(ValueError):
    pass


class LimitTooSmall(ValueError):
    pass


class CountMismatch(RuntimeError):
    """Sign changes found in a Gram block disagree with the expected count."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class MalformedLine(ValueError):
    def __init__(self, message, lineno=None):
        super().__init__(message if lineno is None else f"line {lineno}: {message}")
        self.lineno = lineno


class NonMonotonic(ValueError):
    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class SampleCheckFailed(ValueError):
    pass
