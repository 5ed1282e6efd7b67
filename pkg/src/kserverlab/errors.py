"""Exception types shared across the package."""


class MetricError(ValueError):
    """Base class for invalid distance-matrix input."""


class NonSquare(MetricError):
    pass


class AsymmetricDistance(MetricError):
    pass


class ZeroOffDiagonal(MetricError):
    pass


class TriangleViolation(MetricError):
    pass


class KExceedsN(ValueError):
    pass


class NonPositiveEpsilon(ValueError):
    pass


class InstanceTooLarge(RuntimeError):
    def __init__(self, required, allowed):
        self.required = required
        self.allowed = allowed
        super().__init__(
            f"LP instance needs {required} variables, cap is {allowed}"
        )


class UnknownFormat(ValueError):
    pass


class UnknownPoint(ValueError):
    pass
