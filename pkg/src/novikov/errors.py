"""Exception hierarchy.  Validation errors carry the name of the offending cell."""


class NovikovError(Exception):
    pass


class ValidationError(NovikovError, ValueError):
    def __init__(self, message: str, cell: str | None = None):
        super().__init__(message)
        self.cell = cell


class IllFormedComplex(ValidationError):
    pass


class CocycleViolation(ValidationError):
    pass


class FlatnessViolation(ValidationError):
    pass


class ZeroSpecialization(NovikovError, ValueError):
    pass


class MultivariableUnsupported(NovikovError, ValueError):
    pass


class NonIsolated(NovikovError, ValueError):
    pass


class MissingEulerData(NovikovError, ValueError):
    pass


class UnsupportedGroup(NovikovError, ValueError):
    pass


class InvalidTower(NovikovError, ValueError):
    pass
