"""Exception types shared across the package."""


class WaveqedError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(WaveqedError, ValueError):
    """A parameter or configuration field failed validation.

    The offending field name is kept on the exception so front ends can
    report structured errors.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class DivergenceError(WaveqedError, RuntimeError):
    """The integrated state blew past the divergence guard.

    The exact dynamics are contractive, so this always signals a bad
    system or parameter set rather than a solver limitation.
    """

    def __init__(self, last_valid_time, message=None):
        msg = message or f"state norm exceeded 10, last valid time t = {last_valid_time:.6g}"
        super().__init__(msg)
        self.last_valid_time = last_valid_time


class InconclusiveError(WaveqedError, RuntimeError):
    """A qualitative classification could not be decided from the data."""
