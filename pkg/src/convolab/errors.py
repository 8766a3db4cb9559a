"""Exceptions shared across convolab modules."""


class NoConvergenceError(RuntimeError):
    """An iterative refinement or sweep failed to reach its target.

    Carries the last bracket (previous, current) of the quantity being
    refined, or the best value achieved, so callers can report partial
    results.
    """

    def __init__(self, message, bracket=None, best=None):
        super().__init__(message)
        self.bracket = bracket
        self.best = best


class InconclusiveError(RuntimeError):
    """A quantity cannot be certified from the declared structure.

    Raised e.g. when a symbol lacks a tail declaration and the sampling
    window alone cannot bound a supremum over an unbounded region.
    """
