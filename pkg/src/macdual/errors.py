"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition on mathematical input is violated (wrong ring, wrong
    degree, characteristic excluded by the operation, ...)."""


class RingMismatchError(DomainError):
    """Operands live over different rings or fields."""


class GenericityError(RuntimeError):
    """A randomized construction failed to reach a generic configuration
    within the retry budget.  Distinct from wrong mathematics: a persistent
    failure indicates a too-small field or a bug upstream."""


class InternalCheckError(RuntimeError):
    """A structural identity that must hold for every valid input failed.
    Signals an arithmetic bug in this package, never bad user input."""


class ParseError(ValueError):
    """Rejected source text, with position information."""

    def __init__(self, message, src, offset):
        self.offset = offset
        self.expected = message
        self.excerpt = src[max(0, offset - 12):offset + 12]
        super().__init__(
            "%s at offset %d: ...%r..." % (message, offset, self.excerpt))


class SchemaError(ValueError):
    """A corpus file violates the entry schema."""
