"""Exception hierarchy shared by every module."""


class DirZeroExtError(Exception):
    """Base class; the CLI maps it to exit code 1."""


class MetricError(DirZeroExtError):
    pass


class MissingEntry(MetricError):
    def __init__(self, x, y):
        super().__init__(f"missing distance entry ({x!r}, {y!r})")
        self.witness = (x, y)


class NegativeEntry(MetricError):
    def __init__(self, x, y, value):
        super().__init__(f"negative distance {value} at ({x!r}, {y!r})")
        self.witness = (x, y)


class ZeroDiagonalViolated(MetricError):
    def __init__(self, x):
        super().__init__(f"dist({x!r}, {x!r}) is not 0")
        self.witness = (x,)


class SeparationViolated(MetricError):
    def __init__(self, x, y):
        super().__init__(f"dist({x!r}, {y!r}) + dist({y!r}, {x!r}) = 0")
        self.witness = (x, y)


class TriangleViolated(MetricError):
    def __init__(self, x, y, z):
        super().__init__(
            f"dist({x!r}, {y!r}) + dist({y!r}, {z!r}) < dist({x!r}, {z!r})")
        self.witness = (x, y, z)


class UnknownPoint(DirZeroExtError):
    pass


class SamePoint(DirZeroExtError):
    pass


class RepeatedPoint(DirZeroExtError):
    pass


class EmptySequence(DirZeroExtError):
    pass


class EmptySet(DirZeroExtError):
    pass


class NotAPath(DirZeroExtError):
    pass


class DisconnectedUnderlyingGraph(DirZeroExtError):
    pass


class HypothesesNotMet(DirZeroExtError):
    pass


class NotAStar(DirZeroExtError):
    pass


class PartitionTooLarge(DirZeroExtError):
    pass


class SymmetryViolated(DirZeroExtError):
    pass


class InvalidAssignment(DirZeroExtError):
    pass


class InvalidFixing(DirZeroExtError):
    pass


class BudgetExceeded(DirZeroExtError):
    def __init__(self, budget):
        super().__init__(
            f"brute-force budget of {budget} evaluations exceeded "
            f"(raise it with --budget or DIRZEROEXT_BUDGET)")
        self.budget = budget


class NotCertifiedTractable(DirZeroExtError):
    pass


class RoundingFailed(DirZeroExtError):
    pass


class GadgetError(DirZeroExtError):
    pass


class MetricIsModular(GadgetError):
    pass


class NoOrbitVaryingCycle(GadgetError):
    pass


class GraphOrientable(GadgetError):
    pass


class NoWitnessSequence(GadgetError):
    pass


class NoBiasedTriple(GadgetError):
    pass


class AmbiguousDirection(GadgetError):
    pass


class GadgetNotVerified(GadgetError):
    pass


class ConditionFailed(GadgetError):
    def __init__(self, clause, witness):
        super().__init__(f"gadget condition {clause} fails at {witness!r}")
        self.clause = clause
        self.witness = witness


class FormatError(DirZeroExtError):
    """Malformed input file; message carries the field path."""
