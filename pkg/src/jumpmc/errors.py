"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ToolkitError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ToolkitError, ValueError):
    """An experiment configuration is malformed or inconsistent."""


class AbsorbingStateError(ToolkitError, RuntimeError):
    """Every outgoing rate at the current state is zero, so the process cannot move."""


class DegenerateVelocityError(ToolkitError, RuntimeError):
    """The coordinate sampler hit a state where both directional rates vanish."""


class ConsistencyError(ToolkitError, RuntimeError):
    """A cached quantity disagrees with its from-scratch recomputation."""


class SizeCapError(ToolkitError, RuntimeError):
    """Enumerating a state space would exceed the configured size cap."""


class ReducibleChainError(ToolkitError, RuntimeError):
    """A rate matrix has several closed communicating classes and no reference
    measure was supplied to weight them."""

    def __init__(self, message, classes=None):
        super().__init__(message)
        self.classes = classes if classes is not None else []
