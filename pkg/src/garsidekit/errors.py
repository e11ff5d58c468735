"""
Exception types and the Inconclusive sentinel.

Decision procedures in this package are three-valued where an honest answer
requires it: a bounded search that runs out of budget returns INCONCLUSIVE,
which is a distinct object rather than False.  INCONCLUSIVE refuses to be
used in a boolean position so that `if left_divides(...)` cannot silently
treat "don't know" as "yes".
"""

from __future__ import annotations


class GarsideError(Exception):
    """Base class for all errors raised by this package."""


class CompositionError(GarsideError):
    """Two paths were composed whose endpoints do not match."""


class ValidationError(GarsideError):
    """Invalid input data (bad length function, malformed germ, ...)."""


class UnsupportedError(GarsideError):
    """The operation is not defined for this context (e.g. non-Noetherian)."""


class HeadUndefined(GarsideError):
    """
    An element has two incomparable maximal divisors in the family, so no
    greatest one exists.  Raising instead of picking one doubles as a
    runtime check that the family really is a Garside family.
    """


class NotADivisor(GarsideError):
    """The element is not a left divisor of the Garside element."""


class ExplosionGuard(GarsideError):
    """An orbit/closure search exceeded its configured node budget."""


class ParseError(GarsideError):
    """A structure/germ file failed to parse; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class _Inconclusive:
    """Singleton marker for 'search bound exhausted, no answer'."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError(
            "Inconclusive result used as a boolean; compare with "
            "'is INCONCLUSIVE' instead"
        )

    def __repr__(self):
        return "Inconclusive"


INCONCLUSIVE = _Inconclusive()
