"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


class ProblemTooLargeError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


class ConfigError(ValueError):
    """Raised for malformed benchmark configurations."""
