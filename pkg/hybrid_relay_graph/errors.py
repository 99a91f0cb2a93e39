"""Exception types shared by the relay optimization modules."""


class HybridRelayError(Exception):
    """Base class for every error raised by the relay optimization modules."""
    pass


class ContractError(HybridRelayError, ValueError):
    """Raised when a caller violates an operation's preconditions."""
    pass


class DomainError(HybridRelayError, ValueError):
    """Raised when an argument lies outside a formula's mathematical domain."""
    pass


class ScenarioError(HybridRelayError, ValueError):
    """Raised when a scenario document fails schema validation.

    The message always starts with the offending key.
    """

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class SolverError(HybridRelayError, RuntimeError):
    """Raised when a semidefinite solve ends without an optimal status.

    Carries the (possibly partial) solution so callers can inspect it.
    """

    def __init__(self, message: str, solution=None):
        self.solution = solution
        super().__init__(message)
