"""Exception types shared across the solver."""


class ConfigError(ValueError):
    """Invalid configuration: unknown scheme, incompatible options, bad ranges."""


class NumericalError(RuntimeError):
    """The computation produced non-physical or non-finite values."""


class DegenerateStateError(NumericalError):
    """Density or temperature became non-positive at some space node."""

    def __init__(self, message: str, node: int | None = None):
        super().__init__(message)
        self.node = node
