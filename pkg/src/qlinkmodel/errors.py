"""Exception hierarchy shared by every model in the package."""


class ModelError(Exception):
    """Base class for all errors raised by qlinkmodel."""


class DomainError(ModelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ModelValidityError(ModelError):
    """The operating point lies outside the single-photon event model's domain."""


class UndefinedConditionalError(ModelError):
    """A conditional state was requested but every event probability is zero."""


class OracleError(ModelError):
    """A numerical oracle failed to reach its requested accuracy."""


class ConfigError(ModelError, ValueError):
    """A configuration file could not be parsed or holds an invalid value."""
