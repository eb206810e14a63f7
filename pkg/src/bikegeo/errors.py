"""Exception types shared across the package."""


class BikeGeoError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInputError(BikeGeoError):
    """Input has too few samples or is otherwise degenerate."""


class NotUnitSpeedError(BikeGeoError):
    """Phase-space state violates the unit-speed normalization."""


class DivergenceError(BikeGeoError):
    """Integration produced a non-finite state."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class ImmersionError(BikeGeoError):
    """Curve has a vanishing velocity where an immersion is required."""


class HorizontalityError(BikeGeoError):
    """Sampled path violates the no-skid (horizontality) constraint."""


class InsufficientExtentError(BikeGeoError):
    """Path does not span enough arc length for the measurement."""

    def __init__(self, message, partial_extent=None):
        super().__init__(message)
        self.partial_extent = partial_extent


class NoDirectrixError(BikeGeoError):
    """Straight paths have no directrix to orient against."""


class NoPeriodError(BikeGeoError):
    """Lines, circles and solitons carry no usable curvature period."""


class InvalidPeriodError(BikeGeoError):
    """Period/advance pair violates 0 < L < T."""


class EndpointMismatchError(BikeGeoError):
    """Constructed path does not hit the expected endpoint configuration."""


class RankDeficiencyError(BikeGeoError):
    """Fitting problem is rank deficient (degenerate sample set)."""
