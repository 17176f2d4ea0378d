"""Exception types shared by every module.

The CLI maps these onto exit codes: bad input is a usage error (exit 2),
blown enumeration guards and exhausted searches are resource errors
(exit 3).  Everything else is a bug.
"""


class RadolabError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(RadolabError):
    """Invalid arguments: mismatched universes, malformed descriptors,
    out-of-range points, or preconditions the caller can fix."""


class ResourceLimitError(RadolabError):
    """A configured enumeration guard was exceeded."""


class BoundedSearchError(RadolabError):
    """A bounded scan ran out of budget before finding a required witness.

    ``constraints`` records what was being searched for, so reports can
    surface the exact failing configuration.
    """

    def __init__(self, message: str, constraints: dict | None = None):
        super().__init__(message)
        self.constraints = dict(constraints or {})
