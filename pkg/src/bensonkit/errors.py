"""Exception hierarchy shared by all bensonkit modules."""


class BensonkitError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BensonkitError):
    """Malformed rational literal, shape mismatch, or bad document."""


class DimensionMismatch(BensonkitError):
    """Vector or matrix dimensions are inconsistent."""


class EmptySet(BensonkitError):
    """Operation undefined on an empty polyhedron (recession, generated cone)."""


class EmptyConstraintSet(BensonkitError):
    """A problem was loaded whose constraint set has no feasible point."""


class NotACone(BensonkitError):
    """A cone block has a nonzero right-hand side."""


class TrivialCone(BensonkitError):
    """The ordering cone is {0}; proper-efficiency queries need a nontrivial cone."""


class ConeMismatch(BensonkitError):
    """An orthant-only query was issued against a non-orthant ordering cone."""


class PerturbationOutsideCone(BensonkitError):
    """The perturbation vector is not an element of the required cone."""


class NotPointed(BensonkitError):
    """Proper-efficiency criteria require a pointed ordering cone."""


class NotEpsEfficient(BensonkitError):
    """The ratio profiler was asked about a point that is not shifted-efficient."""


class PointNotFeasible(BensonkitError):
    """A query point lies outside the constraint set."""


class DimensionTooLarge(BensonkitError):
    """Desk-scale enumeration refused; dimension exceeds the configured cap."""


class InternalCheckError(BensonkitError):
    """A self-check failed: certificate did not re-verify or two equivalent
    decision routes disagreed. Indicates a bug, never bad user input."""
