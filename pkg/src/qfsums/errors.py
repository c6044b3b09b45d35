"""Exception types; the CLI maps each to its own exit status."""


class UnsupportedDiscriminant(ValueError):
    """Discriminant outside the supported set (e.g. class number != 1)."""


class ScaleLimitError(ValueError):
    """Requested size exceeds a configured limit."""


class NumericBudgetError(ArithmeticError):
    """A numerical self-check missed its stated tolerance."""
