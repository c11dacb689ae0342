"""Exception types shared across the package."""


class ToolkitError(Exception):
    """Base class for library-specific errors."""


class GraphFormatError(ToolkitError):
    """Malformed or inconsistent graph input."""


class CodeFormatError(ToolkitError):
    """Malformed or inconsistent code file."""


class BudgetError(ToolkitError):
    """A configured search budget would be exceeded."""


class SchemeError(ToolkitError):
    """A scheme precondition does not hold for the given instance."""


class InfeasibleError(ToolkitError):
    """The optimization problem has no feasible solution."""
