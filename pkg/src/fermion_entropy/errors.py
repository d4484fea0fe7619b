class NumericalInvariantError(ArithmeticError):
    """A computed object violates a numerical invariant beyond its tolerance."""


class OracleCapExceededError(ValueError):
    """A full tensor space object would exceed the configured size cap."""
