"""Error types shared across the package."""


class InputError(ValueError):
    """A caller violated a documented precondition."""


class CapacityError(RuntimeError):
    """A request exceeded a configured exhaustive-search cap.

    Raised instead of silently sampling: every search in this package is
    either exhaustive or refused.
    """
