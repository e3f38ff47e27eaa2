"""Exception types raised across the package."""


class XDiscordError(Exception):
    """Base class for all package errors."""


class ContractViolation(XDiscordError, ValueError):
    """An input broke a documented precondition (shape, hermiticity, canonical form)."""


class InvalidStateError(XDiscordError, ValueError):
    """The matrix or parameters do not describe a physical density matrix."""


class DomainError(XDiscordError, ValueError):
    """A scalar argument lies outside the domain of a function."""


class InconsistencyError(XDiscordError, RuntimeError):
    """Two routes that must agree disagree beyond tolerance; indicates a bug."""


class IntegrationError(XDiscordError, RuntimeError):
    """The fixed-step integrator drifted away from unitarity."""
