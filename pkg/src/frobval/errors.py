"""Error hierarchy.

Every domain error carries a stable machine-readable ``code`` so the CLI can
emit structured error objects in JSON mode.
"""


class FrobvalError(Exception):
    code = "ERROR"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json_obj(self):
        obj = {"schema": 1, "error": self.code, "message": self.message}
        if self.details:
            obj["details"] = {k: str(v) for k, v in self.details.items()}
        return obj


class MixedRadicandError(FrobvalError):
    code = "MIXED_RADICAND"


class MixedRepresentationError(FrobvalError):
    code = "MIXED_REPRESENTATION"


class GroupMismatchError(FrobvalError):
    code = "GROUP_MISMATCH"


class ParseError(FrobvalError):
    """Raised on malformed expression or DSL input; carries a position."""

    code = "PARSE_ERROR"

    def __init__(self, message, position=None, expected=None, line=None, column=None):
        details = {}
        if position is not None:
            details["position"] = position
        if expected:
            details["expected"] = ", ".join(expected)
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        super().__init__(message, **details)
        self.position = position
        self.expected = expected or []
        self.line = line
        self.column = column


class UnknownVariableError(FrobvalError):
    code = "UNKNOWN_VARIABLE"


class ZeroDenominatorError(FrobvalError):
    code = "ZERO_DENOMINATOR"


class SpecMismatchError(FrobvalError):
    code = "SPEC_MISMATCH"


class DivisionByZeroError(FrobvalError):
    code = "DIVISION_BY_ZERO"


class ZeroArgumentError(FrobvalError):
    code = "ZERO_ARGUMENT"


class GroundVarInSeriesContextError(FrobvalError):
    code = "GROUND_VAR_IN_SERIES_CONTEXT"


class MissingAssignmentError(FrobvalError):
    code = "MISSING_ASSIGNMENT"


class OrdUndeterminedError(FrobvalError):
    """Series order not resolved below the precision cap.

    This can indicate an algebraic relation among the assigned series, in
    which case the construction is not a valuation at all; the condition is
    surfaced instead of being silently absorbed.
    """

    code = "ORD_UNDETERMINED"


class NoOrd1WitnessError(FrobvalError):
    code = "NO_ORD1_WITNESS"


class UnsupportedKindError(FrobvalError):
    code = "UNSUPPORTED_KIND"


class RankTooLargeError(FrobvalError):
    code = "RANK_TOO_LARGE"
