"""Exception types shared across the engine.

The HTTP layer maps these onto status codes (see service.ERROR_STATUS),
everything else raises them directly.
"""


class CollageError(Exception):
    """Base class for all engine errors."""


class UnknownId(CollageError):
    """Referenced fragment/container id does not exist."""


class MissingSource(CollageError):
    """Captured (non-note) fragment was given no source URL."""


class EmptyText(CollageError):
    """Text-bearing fragment or note created with empty text."""


class NonPositiveExtent(CollageError):
    """Placement width or height is not strictly positive."""


class MemberInInbox(CollageError):
    """Container member must be placed before grouping."""


class NoSource(CollageError):
    """Notes have no source link to return."""


class IoFailure(CollageError):
    """Collage file could not be read or written."""


class SchemaVersionMismatch(CollageError):
    """Collage file declares an unsupported schema version."""


class ValidationFailure(CollageError):
    """Collage file or payload violates a model invariant."""


class UndefinedIdf(CollageError):
    """A term has tf > 0 but df = 0: corpus statistics are corrupt."""


class UnknownSelection(CollageError):
    """Similarity selection does not resolve to a fragment or cluster."""


class NoLabels(CollageError):
    """Cluster has no keywords to build a search query from."""


class NonMonotoneTimestamp(CollageError):
    """Activity events must be appended in timestamp order per user."""


class DegenerateAxis(CollageError):
    """All activity axes are constant; nothing to standardize."""


class RevisionConflict(CollageError):
    """Mutation carried a stale expected revision."""
