class DomainError(ValueError):
    """Raised when an argument falls outside an operation's domain."""
