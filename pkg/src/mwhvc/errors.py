"""Exception hierarchy shared by every module of the package."""


class MWHVCError(Exception):
    """Base class for all package errors."""


class ParseError(MWHVCError, ValueError):
    """Malformed hypergraph or set-system text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParameterError(MWHVCError, ValueError):
    """Invalid algorithm parameter (epsilon, gamma, alpha, ...)."""


class ProtocolError(MWHVCError):
    """A node received an inconsistent set of messages; always a simulator bug."""


class InvariantViolation(MWHVCError):
    """A runtime invariant or counted bound failed.

    ``payload`` carries a JSON-friendly counterexample, ``trace`` the partial
    run trace when one is available.
    """

    def __init__(self, message, payload=None, trace=None):
        super().__init__(message)
        self.payload = payload or {}
        self.trace = trace


class BudgetViolation(InvariantViolation):
    """A message exceeded the CONGEST bit budget."""


class InvalidInstance(MWHVCError, ValueError):
    """A hypergraph or set system failed validation."""
