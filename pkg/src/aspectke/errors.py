"""Exception types shared across the package."""

from __future__ import annotations


class AspectKEError(Exception):
    pass


class ParseError(AspectKEError):
    def __init__(self, message: str, span=None, expected: frozenset[str] = frozenset()):
        self.message = message
        self.span = span
        self.expected = frozenset(expected)
        where = f"{span}: " if span else ""
        hint = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{where}{message}{hint}")


class ValidationError(AspectKEError):
    """Well-formed syntax that breaks a well-formedness rule."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    @property
    def rules(self) -> list[str]:
        return [v.rule for v in self.violations]


class UnsupportedUniverse(AspectKEError):
    """``LVar*`` reached a context that needs to enumerate its members."""


class UnboundVariable(AspectKEError):
    """A condition referenced a name the match did not bind (a validation gap)."""
