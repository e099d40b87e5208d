class TheoremViolation(RuntimeError):
    """An identity that must hold for a correct implementation failed."""


class UsageError(ValueError):
    """Bad input from the caller (unknown group, malformed text, ...)."""
