"""Error taxonomy shared by every module.

Each failure mode that callers are expected to handle gets its own class;
anything that signals a bug in this package rather than bad input raises
InternalInconsistency so it is never silently caught together with the rest.
"""


class Dt4Error(Exception):
    """Base class for all errors raised by this package."""


class NonGenericParameters(Dt4Error):
    """A torus parameter choice annihilates a weight that must stay nonzero."""


class BoundExceeded(Dt4Error):
    """An enumeration or expansion would pass the configured size cap."""


class NotEffective(Dt4Error):
    """A character that must be an honest representation has a negative coefficient."""


class OddPairing(Dt4Error):
    """A weight multiset that must split into (w, -w) pairs does not."""


class CheckFailed(Dt4Error):
    """An independent cross-check disagreed with the primary computation."""


class InternalInconsistency(Dt4Error):
    """An internal invariant was violated; indicates a bug, not bad input."""


class Unsupported(Dt4Error):
    """The requested case is outside the range this package computes."""
