"""Exception hierarchy; each class maps to one CLI exit code."""


class CurveTauError(Exception):
    exit_code = 1


class ParseError(CurveTauError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(CurveTauError):
    exit_code = 3


class BranchNotOnCurve(ValidationError):
    pass


class NonReduced(ValidationError):
    pass


class NonPrimitive(ValidationError):
    pass


class NotIncluded(ValidationError):
    """An inner generator is not in the outer module."""


class PrecisionExhausted(CurveTauError):
    exit_code = 4


class ConductorNotStabilized(PrecisionExhausted):
    pass


class NonIsolated(PrecisionExhausted):
    pass


class OracleMismatch(CurveTauError):
    exit_code = 5
