"""Shared exception types."""


class SizeGuardError(RuntimeError):
    """A requested computation exceeds a guarded enumeration/size limit."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""
