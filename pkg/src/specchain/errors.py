"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when a graph document is malformed or inconsistent."""


class AssignmentFormatError(ValueError):
    """Raised when an assignment document does not match its graph."""


class SolverError(RuntimeError):
    """Raised when an eigensolve fails to reach the requested residual."""


class StuckChainError(RuntimeError):
    """Raised when a chain step exhausts its proposal attempt budget."""

    def __init__(self, step_index: int, attempts: int, last_reason: str):
        self.step_index = step_index
        self.attempts = attempts
        self.last_reason = last_reason
        super().__init__(
            f"step {step_index}: no feasible proposal after {attempts} attempts "
            f"(last rejection: {last_reason})"
        )
