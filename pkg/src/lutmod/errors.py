"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A modulus, width or table layout that cannot form a valid plan."""


class ContractViolation(ValueError):
    """An operand outside the range an operation is defined for."""
