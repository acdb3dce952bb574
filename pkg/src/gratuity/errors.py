"""Exception types shared across the package."""

from __future__ import annotations


class ParameterError(ValueError):
    """An input fell outside its mathematical domain.

    ``field`` names the offending parameter so the CLI and HTTP layers can
    point at it in their diagnostics.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class BracketingError(RuntimeError):
    """A root-finder could not find (or keep) a sign change on its bracket."""
