"""Exception types shared across the package."""


class SpatialGraphError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(SpatialGraphError):
    """Malformed multigraph or reference to a missing vertex/edge."""


class CycleCapExceeded(SpatialGraphError):
    """Cycle enumeration aborted after exceeding the configured cap."""


class RotationError(SpatialGraphError):
    """Rotation system is malformed or not spherical."""


class BridgePresent(SpatialGraphError):
    """A face boundary walk repeats an edge, so face cycles are undefined."""

    def __init__(self, edges):
        self.edges = tuple(sorted(edges))
        super().__init__(f"face walk repeats bridge edge(s): {', '.join(self.edges)}")


class NotCheckerboardColorable(SpatialGraphError):
    """The face adjacency graph of the embedding is not bipartite."""


class WeightError(SpatialGraphError):
    """Weight is inconsistent with the graph or has the wrong modulus."""


class DiagramError(SpatialGraphError):
    """Combinatorially inconsistent spatial graph diagram."""


class CrossingLimitExceeded(SpatialGraphError):
    """Conway computation refused: diagram exceeds the crossing limit."""


class NotAlgebraicallySplit(SpatialGraphError):
    """Sato-Levine invariant requested for a link with nonzero linking number."""


class PreconditionViolation(SpatialGraphError):
    """The weighted linking-number hypothesis fails, so the invariant is undefined."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            "weighted linking-number precondition fails for %d cycle pair(s)"
            % len(self.violations)
        )


class NoApplicableTheorem(SpatialGraphError):
    """Invariance trial refused: no invariance statement covers the given weights."""
