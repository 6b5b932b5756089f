"""Exception types shared across the package."""


class NfCoverError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(NfCoverError, ValueError):
    """Operands live in different number fields or have the wrong dimension."""


class CapExceededError(NfCoverError):
    """An enumeration or factorization would exceed the configured resource bound."""


class UnsupportedPrimeError(NfCoverError):
    """Prime decomposition cannot be certified for this field/prime combination."""


class NotExactError(NfCoverError, ValueError):
    """An operation requiring an exact covering system got something else."""

    def __init__(self, verdict):
        super().__init__(f"covering system is not exact: {verdict}")
        self.verdict = verdict
