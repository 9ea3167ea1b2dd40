"""Exception hierarchy.

Geometric infeasibility (the data admit no answer) and numerical
resolution failures (the data are too coarse to answer) are kept apart so
callers can map them to distinct exit codes.
"""


class SpiralKitError(Exception):
    """Base class for all library errors."""


class GeometryError(SpiralKitError):
    """The requested object does not exist for the given data."""


class ResolutionTooCoarse(SpiralKitError):
    """Sampled data too coarse to track angles/crossings unambiguously."""


class CoincidentEndpoints(GeometryError):
    """The two element points coincide; no chord frame exists."""


class InversionCenterHit(GeometryError):
    """The point to invert coincides with the inversion center."""


class DegenerateLense(GeometryError):
    """sin omega = 0: the lense has no interior and no biarcs exist."""


class ContactAtInfinity(GeometryError):
    """The biarc's junction (or a subarc) passes through infinity."""


class PolePoint(GeometryError):
    """Query point coincides with a pole A or B of the biarc family."""


class NotASpiralPair(GeometryError):
    """End data with Q >= 0: no non-biarc spiral joins them."""


class NoSpiralExists(GeometryError):
    """Existence conditions fail; construction declined."""


class NotDisjoint(GeometryError):
    """Circle pair with Q >= 0: no concentricizing inversion."""


class DegenerateTriple(GeometryError):
    """Consecutive interpolation points coincide."""
