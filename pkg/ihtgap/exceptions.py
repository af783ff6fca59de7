"""Error types raised by the ihtgap toolkit."""


class IhtGapError(Exception):
    """Base class for every error raised by ihtgap."""


class DimensionMismatchError(IhtGapError, ValueError):
    """Vectors, supports or datasets disagree on the ambient dimension."""


class InvalidParameterError(IhtGapError, ValueError):
    """A documented precondition on an argument does not hold."""


class CovarianceError(IhtGapError, ValueError):
    """A dense covariance matrix failed positive-semidefinite factorization."""


class CombinatorialCapError(IhtGapError, ValueError):
    """Exhaustive enumeration would exceed the configured caps."""


class DivergenceError(IhtGapError, RuntimeError):
    """The IHT objective became non-finite."""

    def __init__(self, iteration: int, value: float):
        self.iteration = iteration
        self.value = value
        super().__init__(f"IHT diverged at iteration {iteration}: objective={value}")


class NewtonConvergenceError(IhtGapError, RuntimeError):
    """Damped Newton on a restricted logistic problem hit its iteration cap."""

    def __init__(self, iterations: int, gradient_norm: float):
        self.iterations = iterations
        self.gradient_norm = gradient_norm
        super().__init__(
            f"Newton debiasing did not converge after {iterations} iterations "
            f"(gradient norm {gradient_norm:.3e})"
        )


class SweepError(IhtGapError, RuntimeError):
    """A task inside an experiment or stability run failed."""

    def __init__(self, location: str, cause: Exception):
        self.location = location
        self.cause = cause
        super().__init__(f"{location}: {type(cause).__name__}: {cause}")
