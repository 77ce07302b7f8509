"""Exception hierarchy shared by every module."""


class ZoneCoverError(Exception):
    """Base class for all errors raised by zonecover."""


class InvalidGeometry(ZoneCoverError, ValueError):
    """A point, zone or cap violates its construction invariants."""


class DimensionMismatch(ZoneCoverError, ValueError):
    pass


class WrongDimension(ZoneCoverError, ValueError):
    """An operation restricted to one sphere dimension got another."""


class BudgetError(ZoneCoverError):
    """A width or radius budget precondition does not hold.

    The CLI reports these as ``not-applicable`` rather than as failures.
    """


class RadiusBudgetExceeded(BudgetError):
    pass


class RadiusBudgetTooSmall(BudgetError):
    pass


class RadiusBudgetTooLarge(BudgetError):
    pass


class WidthBudgetExceeded(BudgetError):
    pass


class WidthBudgetNotBelow2r(BudgetError):
    pass


class WidthSumNotPi(BudgetError):
    pass


class ConditionsViolated(ZoneCoverError):
    """The merge hypotheses fail; ``index`` is the offending cap (None for the norm test)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ZeroVector(ZoneCoverError):
    pass


class CoplanarInputs(ZoneCoverError):
    pass


class PreconditionMismatch(ZoneCoverError):
    pass


class SubsetBoundExceeded(ZoneCoverError):
    pass


class NumericalStall(ZoneCoverError):
    """Neither a certified witness nor a violating subset exists at the given tolerance."""
