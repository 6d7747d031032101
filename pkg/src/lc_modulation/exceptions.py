from typing import Optional, Sequence


class ModulationError(Exception):
    pass


class ValidationFailure(ModulationError, ValueError):
    pass


class NumericalFailure(ModulationError, ArithmeticError):
    pass


class EmptySeries(ValidationFailure):
    pass


class LengthMismatch(ValidationFailure):
    pass


class NonMonotoneTimes(ValidationFailure):
    pass


class DegenerateSpan(ValidationFailure):
    pass


class GridMismatch(ValidationFailure):
    pass


class IndexCollision(ValidationFailure):
    pass


class DegenerateDomain(ValidationFailure):
    pass


class OutOfDomain(ValidationFailure):
    def __init__(self, message: str, indices: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.indices = list(indices) if indices is not None else []


class OrderTooHigh(ValidationFailure):
    pass


class EmptyBasis(ValidationFailure):
    pass


class ShapeMismatch(ValidationFailure):
    pass


class NonPositiveResult(ValidationFailure):
    pass


class DegenerateDof(ValidationFailure):
    pass


class UnknownComponent(ValidationFailure):
    pass


class TooFewReplicates(ValidationFailure):
    pass


class OutOfRange(ValidationFailure):
    pass


class NonStationary(ValidationFailure):
    pass


class BadRange(ValidationFailure):
    pass


class BadPartition(ValidationFailure):
    pass


class ParseError(ValidationFailure):
    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


class SingularSystem(NumericalFailure):
    def __init__(self, message: str, smallest_pivot: Optional[float] = None):
        super().__init__(message)
        self.smallest_pivot = smallest_pivot


class WindowTransformUnderflow(NumericalFailure):
    def __init__(self, message: str, indices: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.indices = list(indices) if indices is not None else []


class NonPositivePsd(NumericalFailure):
    pass


class AllFitsFailed(NumericalFailure):
    pass
