"""Error types shared across the package."""


class InputError(ValueError):
    """A caller violated a documented precondition."""


class LimitError(RuntimeError):
    """An instance exceeds the configured size limits; refusing to run.

    Raised instead of silently returning a possibly-wrong answer.
    """


class NotInScopeError(LimitError):
    """The family sits on the single-exponential side of the dichotomy;
    no superexponential reduction exists for it here."""
