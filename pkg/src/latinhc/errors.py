"""Exception hierarchy shared by the library and the command line."""


class LatinError(Exception):
    """Base class for every error raised by :mod:`latinhc`."""


class ShapeError(LatinError, ValueError):
    """Cell counts, dimensions or orders that do not fit together."""


class RangeError(LatinError, ValueError):
    """A parameter outside the range an operation supports."""


class AllEqualError(RangeError):
    """The block sizes of the three-block array are all equal."""


class NotALayerError(LatinError, ValueError):
    """A candidate layer is not a layer of the array it is stacked on."""


class ForcedConflict(LatinError, ValueError):
    """A forced symbol is not a member of its cell's set."""


class AlreadyFull(LatinError, ValueError):
    """Extension was requested for a hypercuboid that is already a hypercube."""


class DegenerateDepth(LatinError, ValueError):
    """Regularity is undefined for full hypercubes."""


class ValidationError(LatinError, ValueError):
    """An input object failed validation where a valid one is required."""


class ParseError(LatinError, ValueError):
    """A serialized object could not be read under strict parsing."""
