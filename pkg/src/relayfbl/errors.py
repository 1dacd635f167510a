"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A scenario or model configuration is invalid."""


class AccuracyError(RuntimeError):
    """A numerical routine failed to reach its requested tolerance.

    Carries the best estimate obtained so far and the achieved error bound.
    """

    def __init__(self, message, estimate=None, achieved_error=None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved_error = achieved_error
