from __future__ import annotations


class QSchemesError(Exception):
    pass


class ParameterError(QSchemesError, ValueError):
    """A parameter outside the domain of a formula or construction."""

    def __init__(self, name: str, value: object, domain: str):
        self.name = name
        self.value = value
        self.domain = domain
        super().__init__(f"invalid {name}={value!r}; valid domain: {domain}")


class NotAlternating(QSchemesError):
    pass


class NotIncreasing(QSchemesError):
    pass


class CapExceeded(QSchemesError):
    pass


class UnsupportedField(QSchemesError):
    pass


class InconsistentCounts(QSchemesError):
    pass


class ResidualSpectrum(QSchemesError):
    pass
