"""Exception types shared across the package."""


class LieFusionError(Exception):
    """Base class for every error raised by this package."""


class InvalidType(LieFusionError):
    """Series letter and rank do not name a simple Lie algebra."""


class GroupTooLarge(LieFusionError):
    """Weyl group enumeration would exceed the configured cap."""


class NotDominant(LieFusionError):
    """A weight expected to be dominant integral is not."""


class NotInAlcove(LieFusionError):
    """A weight lies outside the level-k alcove."""


class OnBoundary(LieFusionError):
    """The translated representative landed on the boundary of the Weyl star.

    The caller must perturb or reject such degenerate input.
    """


class ImaginaryRoot(LieFusionError):
    """Operation requires a real affine root (nonzero finite part)."""


class DegenerateConfiguration(LieFusionError):
    """An orbit pair touches an affine wall, so fixed-point data is ill defined.

    The message names the violated wall.
    """


class ResidualTooLarge(LieFusionError):
    """A character sum failed to round cleanly to an integer.

    This signals a convention bug and is never swallowed.
    """


class RegularityError(LieFusionError):
    """A torus point is singular for an operation that needs a regular one."""


class IdentityViolated(LieFusionError):
    """A verified identity failed; the message carries the offending data."""
