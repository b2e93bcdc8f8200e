"""Exception types raised by the fdlp package.

Plain ``ValueError`` is used for bad arguments (empty inputs, out-of-range
counts); the classes here mark domain failures a caller may want to handle
separately.
"""


class FdlpError(Exception):
    """Base class for all fdlp-specific errors."""


class DegenerateSignalError(FdlpError):
    """Signal or model has no usable energy (zero input, gain <= 0)."""


class IllConditionedError(FdlpError):
    """Levinson recursion broke down (prediction error <= 0)."""

    def __init__(self, order: int, error: float):
        self.order = order
        self.error = error
        super().__init__(
            f"prediction error became non-positive ({error:.3e}) at order {order}; "
            "autocorrelation is not positive definite"
        )


class NumericError(FdlpError):
    """A computation produced non-finite values or failed to converge."""


class ResolutionError(FdlpError):
    """Evaluation grid too coarse to track the response unambiguously."""


class FormatError(FdlpError):
    """A file did not match the expected on-disk format."""
