class InvalidStateError(ValueError):
    """A matrix failed one of the density-matrix invariants.

    ``invariant`` names the failed check: one of ``"shape"``, ``"finite"``,
    ``"hermitian"``, ``"trace"``, ``"positivity"``, ``"dim"``.
    """

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class ResourceError(RuntimeError):
    """A computation would exceed a configured size budget."""
