"""Exception hierarchy shared by every module of the package."""


class PartitionError(Exception):
    """Base class for all errors raised by :mod:`pqg`."""


class OverlapOrGap(PartitionError, ValueError):
    pass


class WordLengthMismatch(PartitionError, ValueError):
    pass


class ShapeMismatch(PartitionError, ValueError):
    pass


class ColourMismatch(PartitionError, ValueError):
    pass


class EmptyRow(PartitionError, ValueError):
    pass


class LimitExceeded(PartitionError, ValueError):
    pass


class UnknownColour(PartitionError, ValueError):
    pass


class BoundTooSmall(PartitionError, ValueError):
    pass


class NonAssociativeFusionSet(PartitionError, ValueError):
    pass


class SizeOverflow(PartitionError, ValueError):
    pass


class NotProjective(PartitionError, ValueError):
    pass


class UnknownAtBound(PartitionError):
    """A generated category cannot decide membership within its saturation bound."""


class NotAdmissible(PartitionError, ValueError):
    pass


class ConditionFails(PartitionError, ValueError):
    pass


class InvalidGroup(PartitionError, ValueError):
    pass
