"""Exception types shared across the package."""


class MonopoleStarError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(MonopoleStarError, ValueError):
    """A direction was requested for a vector of (numerically) zero length."""


class NotPure(MonopoleStarError, ValueError):
    """A quaternion expected to be purely imaginary has a scalar part."""


class SingularSegment(MonopoleStarError, ValueError):
    """The segment from x to x - a passes through the origin, where the phase is undefined."""


class NotLieElement(MonopoleStarError, ValueError):
    """A free-algebra element failed the Dynkin round-trip test."""


class DegreeCapExceeded(MonopoleStarError, OverflowError):
    """An intermediate Fourier polynomial exceeded the configured total degree."""
