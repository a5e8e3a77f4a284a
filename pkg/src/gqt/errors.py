"""Exception types shared across the package."""


class GqtError(Exception):
    """Base class for all library errors."""


class StructuralError(GqtError, ValueError):
    """Malformed input: missing map entries, unknown names, bad shapes."""


class DomainError(GqtError, ValueError):
    """Operation applied outside its domain, e.g. modal status of the zero state."""


class IncompatibleOperands(GqtError):
    """Conjunction or adjunction of propositions that do not commute."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AmbiguousRealization(GqtError):
    """A derived proposition matches more than one model proposition."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class EntanglementPreconditionError(GqtError):
    """Entangled-state search attempted while its preconditions fail."""

    def __init__(self, message, report=()):
        super().__init__(message)
        self.report = tuple(report)


class OrbitCapExceeded(GqtError):
    """Orbit closure discovered more states than the configured cap."""

    def __init__(self, message, cap, discovered=(), frontier=()):
        super().__init__(message)
        self.cap = cap
        self.discovered = tuple(discovered)
        self.frontier = tuple(frontier)
