"""Exception hierarchy shared by every transframe module."""


class TransframeError(Exception):
    """Base class for all errors raised by this package."""


class FrameError(TransframeError, ValueError):
    """A frame could not be built or a point/set argument is invalid."""


class NonTransitive(FrameError):
    def __init__(self, triple):
        self.triple = tuple(triple)
        a, b, c = self.triple
        super().__init__(
            f"relation is not transitive: ({a!r},{b!r}) and ({b!r},{c!r}) "
            f"present but ({a!r},{c!r}) missing"
        )


class DuplicatePoint(FrameError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"duplicate point id {point!r}")


class DanglingEdge(FrameError):
    def __init__(self, edge):
        self.edge = tuple(edge)
        super().__init__(f"edge {self.edge!r} mentions an undeclared point")


class UnknownPoint(FrameError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"point {point!r} does not belong to the frame")


class EmptyGenerator(FrameError):
    pass


class NotRooted(FrameError):
    pass


class SkeletonNotTree(FrameError):
    """The inverse skeleton of a frame is not a tree.

    ``clusters`` names the offending clusters: either several final
    clusters (disconnected) or a cluster whose successors branch.
    """

    def __init__(self, message, clusters=()):
        self.clusters = tuple(clusters)
        super().__init__(message)


class WeakWidthViolation(FrameError):
    def __init__(self, message, component=None):
        self.component = component
        super().__init__(message)


class BudgetExceeded(TransframeError):
    """A search or enumeration would need more work than the budget allows."""

    def __init__(self, required, budget, what="enumeration"):
        self.required = required
        self.budget = budget
        self.what = what
        super().__init__(f"{what} needs {required} steps, budget is {budget}")


class RejectionBudgetExceeded(BudgetExceeded):
    def __init__(self, attempts, produced, wanted):
        self.produced = produced
        self.wanted = wanted
        super().__init__(attempts, attempts, what=f"rejection sampling ({produced}/{wanted} frames)")


class FormulaSyntaxError(TransframeError, ValueError):
    """Parse failure; ``column`` is 1-based."""

    def __init__(self, message, column, text=""):
        self.column = column
        self.text = text
        super().__init__(f"{message} at column {column}")


class InvalidIndex(TransframeError, ValueError):
    pass


class OrderingMismatch(TransframeError, ValueError):
    pass
