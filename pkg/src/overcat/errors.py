"""Exception hierarchy shared by every module of the engine."""


class OvercatError(Exception):
    """Base class; the CLI maps any subclass to exit code 2."""


class MalformedTable(OvercatError):
    """A table references an id that does not exist (dangling reference)."""


class UnknownObject(OvercatError):
    pass


class UnknownTarget(OvercatError):
    pass


class CodomainMismatch(OvercatError):
    pass


class InvalidArity(OvercatError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ShapeTooLarge(OvercatError):
    def __init__(self, shape_name, budget):
        super().__init__(f"enumeration of {shape_name!r}-diagrams exceeded budget {budget}")
        self.shape_name = shape_name
        self.budget = budget


class BudgetExceeded(OvercatError):
    def __init__(self, what, budget):
        super().__init__(f"{what}: budget {budget} exceeded")
        self.what = what
        self.budget = budget


class NotParallel(OvercatError):
    pass


class AritiesDiffer(OvercatError):
    pass


class NotInOneFiber(OvercatError):
    pass


class HypothesesUnverified(OvercatError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ArityViolation(OvercatError):
    pass


class InvalidAdjunction(OvercatError):
    def __init__(self, message, problems=()):
        super().__init__(message)
        self.problems = list(problems)


class UnitNotInitial(OvercatError):
    pass


class CoequalizerUnavailable(OvercatError):
    pass


class InductionObstruction(OvercatError):
    def __init__(self, message, diagram=None):
        super().__init__(message)
        self.diagram = diagram


class NotStabilized(OvercatError):
    pass


class SchemaError(OvercatError):
    def __init__(self, pointer, message):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer


class UsageError(OvercatError):
    pass
