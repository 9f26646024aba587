"""Exception types shared across the package."""


class TangleError(Exception):
    """Base class for all package-specific errors."""


class ResourceLimitError(TangleError):
    """A dynamic-programming table exceeded its configured state cap."""

    def __init__(self, states: int, cap: int):
        self.states = states
        self.cap = cap
        super().__init__(
            f"DP table reached {states} states, exceeding the cap of {cap}; "
            f"raise the state cap or reduce the requested range"
        )


class BruteForceBoundError(TangleError):
    """A brute-force enumeration was requested beyond its safety bound."""

    def __init__(self, n: int, bound: int):
        self.n = n
        self.bound = bound
        super().__init__(
            f"refusing to enumerate walks of length {n}: exceeds the "
            f"brute-force bound {bound} (combinatorial explosion guard)"
        )


class CoverageError(TangleError):
    """An input sequence does not cover an index a computation needs."""

    def __init__(self, what: str, missing_index: int, have: int):
        self.missing_index = missing_index
        self.have = have
        super().__init__(
            f"{what} must cover index {missing_index} but only reaches "
            f"index {have}"
        )


class NonUnitSeriesError(TangleError):
    """Inversion of a series whose constant term is zero."""


class CompositionError(TangleError):
    """Series composition with an inner series of nonzero constant term."""


class IntegrityError(TangleError):
    """An internal exactness check failed; indicates a bug, not bad input."""


class SingularLeadingCoefficientError(TangleError):
    """The leading coefficient polynomial of a recurrence vanished at some n.

    The term a(n + order) cannot be produced by the recurrence; callers can
    fill it from an independent computation and resume.
    """

    def __init__(self, n: int, order: int):
        self.n = n
        self.missing_index = n + order
        super().__init__(
            f"leading coefficient vanishes at n={n}; term {n + order} "
            f"cannot be computed from the recurrence"
        )


class InsufficientTermsError(TangleError):
    """Too few sequence terms for the requested recurrence search."""

    def __init__(self, have: int, required: int):
        self.have = have
        self.required = required
        super().__init__(
            f"recurrence search needs at least {required} terms, got {have}"
        )
