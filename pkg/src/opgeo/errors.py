"""Exception types shared across the package."""


class LinalgError(ValueError):
    """Input rejected by a matrix kernel (non-square, non-Hermitian, non-finite)."""


class ShapeMismatchError(ValueError):
    """Two values with incompatible block structures were combined."""


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold (e.g. norm != 1)."""


class DegenerateInputError(PreconditionError):
    """The zero element was passed to a classifier that requires norm one."""


class MalformedCertificateError(ValueError):
    """A certificate is structurally invalid, as opposed to failing verification."""
