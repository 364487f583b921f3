"""Exception types raised across the package."""


class FloodnetError(Exception):
    """Base class for all package errors."""


class InvalidSizeError(FloodnetError, ValueError):
    """Network size outside the range an operation supports."""


class InvalidNodeError(FloodnetError, ValueError):
    """Node id outside ``1..n`` or an otherwise malformed endpoint."""


class ContractError(FloodnetError, ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class DomainError(FloodnetError, ValueError):
    """Closed-form quantity evaluated outside its domain."""


class SearchLimitError(FloodnetError):
    """Exhaustive search requested above the configured node ceiling."""
