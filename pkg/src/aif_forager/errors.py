"""Exception types raised across the package."""


class ForagerError(Exception):
    pass


class InvalidDistribution(ForagerError, ValueError):
    pass


class InvalidInput(ForagerError, ValueError):
    pass


class ShapeError(ForagerError, ValueError):
    pass


class InvalidObservation(ForagerError, ValueError):
    pass


class InvalidModel(ForagerError, ValueError):
    """A generative model failed validation; ``violations`` lists every problem."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DeadAgent(ForagerError, RuntimeError):
    pass


class ConfigError(ForagerError, ValueError):
    pass


class EmitError(ForagerError, OSError):
    """Writing or reading an artifact failed; the message names the path."""
