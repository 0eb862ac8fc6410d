"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: unparseable text, non-token values, letters outside the alphabet."""


class DomainError(ValueError):
    """Structurally valid input outside an operation's domain (precondition failure)."""


class InvariantError(ValueError):
    """A value failed its own invariants; carries the validation report."""

    def __init__(self, report, message=None):
        self.report = report
        super().__init__(message or "invariant violation: " + report.summary())


class NotInRangeError(ValueError):
    """The queried object lies outside the map's image at this truncation."""


class BudgetExceededError(RuntimeError):
    """The search hit its node budget before reaching an answer."""

    def __init__(self, nodes, budget):
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"node budget exceeded: {nodes} > {budget}")


class EnumerationGuardError(RuntimeError):
    """An exhaustive check would enumerate more elements than its guard allows."""


class FusionIncoherentError(ValueError):
    """A fusion chain is inconsistent at the named index."""

    def __init__(self, index, message):
        self.index = index
        super().__init__(f"fusion incoherent at index {index}: {message}")


class FrozenWitnessInvalidError(ValueError):
    """Freezing a witness below a cut produced a pair that is not a connection."""

    def __init__(self, report):
        self.report = report
        super().__init__("frozen witness invalid: " + report.summary())
