"""Exception types shared across the toolkit."""


class ConfigError(ValueError):
    """Invalid specification, setting, or command-line argument."""


class OutOfBoundsError(ConfigError):
    """A polygon vertex or placement falls outside the image."""


class ShapeError(ValueError):
    """Tensor or array shapes are inconsistent for the requested operation."""


class MissingSignError(ValueError):
    """A region operation needs a notary sign but the document has none."""


class DivergenceError(RuntimeError):
    """Training produced a non-finite loss."""

    def __init__(self, message: str, step: int, batch_path: str | None = None):
        super().__init__(message)
        self.step = step
        self.batch_path = batch_path
