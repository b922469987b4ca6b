"""Exceptions raised by the exchanged 3-ary cube toolkit."""
from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .router import CaseLabel


class E3CError(Exception):
    """Base exception for the package."""


class DimensionError(E3CError):
    """Exception to indicate a length, radix or index-range mismatch."""


class CodecError(E3CError):
    """Exception to indicate an unparsable digit string or vertex index."""


class DomainError(E3CError):
    """Exception to indicate a violated operation precondition."""


class ConfigurationError(E3CError):
    """Exception to indicate an invalid command configuration."""


class ConstructionDefect(E3CError):
    """Exception to indicate a path construction that broke its contract."""

    def __init__(
        self,
        message: str,
        label: CaseLabel | None = None,
        paths: Sequence[Sequence[Any]] = (),
    ) -> None:
        """Initialize the defect.

        Args:
            message: Human readable description
            label: Case label of the offending pair, if known
            paths: Offending paths as vertex sequences
        """
        super().__init__(message)
        self.label = label
        self.paths = [list(path) for path in paths]


class ResourceBudgetExceeded(E3CError):
    """Exception to indicate that an exhaustive run would exceed its budget."""

    def __init__(self, message: str, required: int, budget: int) -> None:
        """Initialize the error.

        Args:
            message: Human readable description
            required: Work units the run would need
            budget: Configured cap
        """
        super().__init__(message)
        self.required = required
        self.budget = budget
