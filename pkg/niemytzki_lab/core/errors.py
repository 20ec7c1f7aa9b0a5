"""
Error module for Niemytzki Lab

This module provides the error codes and the exception hierarchy shared by
every engine module, plus the JSON error object the CLI prints on failure.
"""
from typing import Any, Dict, Optional


# Error codes carried in error reports
class ErrorCodes:
    INTERNAL_ERROR = 1
    DOMAIN_ERROR = 10
    RANGE_ERROR = 11
    ARGUMENT_ERROR = 12
    MEMBERSHIP_ERROR = 13
    ANCHOR_MISMATCH = 14
    UNSUPPORTED_TARGET = 20
    UNSUPPORTED_FAMILY = 21
    EVALUATION_ERROR = 30
    PRECONDITION_ERROR = 31
    NO_ROOT_ERROR = 32
    ALL_DEGENERATE_ERROR = 33
    PARSE_ERROR = 40
    AXIOM_ERROR = 41
    INVARIANT_ERROR = 42
    UNKNOWN_ENTRY = 43


class LabError(Exception):
    """Base exception for all engine errors"""
    code = ErrorCodes.INTERNAL_ERROR

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def to_report(self) -> Dict[str, Any]:
        """Convert exception to a JSON-ready error object"""
        error: Dict[str, Any] = {
            "code": self.code,
            "type": type(self).__name__,
            "message": self.message,
        }
        if self.details:
            error["details"] = self.details
        return {"error": error}


class DomainError(LabError):
    """Argument outside the domain of a profile or function"""
    code = ErrorCodes.DOMAIN_ERROR


class RangeError(LabError):
    """Value outside the range of a profile"""
    code = ErrorCodes.RANGE_ERROR


class ArgumentError(LabError):
    """Invalid combination of arguments"""
    code = ErrorCodes.ARGUMENT_ERROR


class MembershipError(LabError):
    """Point is not a member of the required region"""
    code = ErrorCodes.MEMBERSHIP_ERROR


class AnchorMismatch(LabError):
    """Neighborhoods compared at different anchors"""
    code = ErrorCodes.ANCHOR_MISMATCH

    def __init__(self, inner: float, outer: float):
        super().__init__(
            f"Anchors differ: {inner!r} != {outer!r}",
            {"inner": inner, "outer": outer},
        )


class UnsupportedTarget(LabError):
    """Target family has an exponent that varies with the index"""
    code = ErrorCodes.UNSUPPORTED_TARGET

    def __init__(self, family_name: str):
        super().__init__(
            f"Target family '{family_name}' has an index-dependent exponent",
            {"family": family_name},
        )


class UnsupportedFamily(LabError):
    """Family has neither a power-law form nor a registered proxy"""
    code = ErrorCodes.UNSUPPORTED_FAMILY

    def __init__(self, family_name: str, reason: str = "no power-law form or proxy"):
        super().__init__(
            f"Family '{family_name}' is not supported: {reason}",
            {"family": family_name},
        )


class EvaluationError(LabError):
    """Function could not be evaluated at a sample point"""
    code = ErrorCodes.EVALUATION_ERROR


class PreconditionError(LabError):
    """Operation precondition violated on the sampled grid"""
    code = ErrorCodes.PRECONDITION_ERROR


class NoRootError(LabError):
    """No root could be bracketed"""
    code = ErrorCodes.NO_ROOT_ERROR


class AllDegenerateError(LabError):
    """Every sample had a zero denominator"""
    code = ErrorCodes.ALL_DEGENERATE_ERROR


class ParseError(LabError):
    """Malformed family specification"""
    code = ErrorCodes.PARSE_ERROR

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        details: Dict[str, Any] = {}
        if line is not None:
            details["line"] = line
        if field is not None:
            details["field"] = field
        self.line = line
        self.field = field
        super().__init__(message, details)


class AxiomError(LabError):
    """Family failed basic-family verification"""
    code = ErrorCodes.AXIOM_ERROR


class InvariantError(LabError):
    """Postcondition of an operation failed"""
    code = ErrorCodes.INVARIANT_ERROR


class UnknownEntry(LabError):
    """Registry lookup failed"""
    code = ErrorCodes.UNKNOWN_ENTRY

    def __init__(self, kind: str, name: str, known: Optional[list] = None):
        super().__init__(
            f"Unknown {kind} '{name}'",
            {"kind": kind, "name": name, "known": sorted(known or [])},
        )
