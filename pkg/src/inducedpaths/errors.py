class ParseError(ValueError):
    """Malformed graph, path or interval input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """Input does not belong to the class an extractor is defined on."""


class CertificateError(AssertionError):
    """A runtime-checked certificate or bound failed.

    Raised instead of returning an unverified answer.
    """
