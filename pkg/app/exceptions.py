"""Error types raised by the augmentation engine and the benchmark."""


class TsaugError(Exception):
    """Base class for all engine errors."""


class DatasetFormatError(TsaugError, ValueError):
    """A UCR file is empty, malformed or unreadable."""


class UnknownMethodError(TsaugError, KeyError):
    """The requested augmentation method is not registered."""

    def __init__(self, method: str, supported):
        self.method = method
        self.supported = list(supported)
        super().__init__(method)

    def __str__(self) -> str:
        return (f"Unknown augmentation method '{self.method}'. "
                f"Supported methods: {', '.join(self.supported)}")


class InvalidParamsError(TsaugError, ValueError):
    """A parameter override names an unknown key or violates a constraint."""


class AugmentationError(TsaugError, RuntimeError):
    """An augmenter could not produce a sample."""


class MissingBaselineError(TsaugError, ValueError):
    """Residual analysis requested without the baseline method."""


class SpectrumError(TsaugError, ValueError):
    """A half spectrum violates the real-signal symmetry constraints."""


class OracleSizeError(TsaugError, ValueError):
    """Input too large for exhaustive DTW path enumeration."""


class InsufficientPoolError(AugmentationError):
    """The class pool cannot supply the references a pattern method needs."""
