"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for usage/domain problems, 2 when a record lacks the data a formula needs,
3 when inputs contradict the structural constraints.
"""

from __future__ import annotations


class InstantonError(Exception):
    exit_code = 1


class InvalidSlopeError(InstantonError, ValueError):
    pass


class DomainError(InstantonError, ValueError):
    """An operation was called outside the slopes/bundles where it is defined."""


class InvalidBundleError(DomainError):
    pass


class NotF2HomologySphereError(DomainError):
    pass


class IncompleteRecordError(InstantonError):
    exit_code = 2

    def __init__(self, knot: str, fields: tuple[str, ...] | list[str], purpose: str = ""):
        self.knot = knot
        self.fields = tuple(fields)
        msg = f"{knot}: missing {', '.join(self.fields)}"
        if purpose:
            msg += f" (needed for {purpose})"
        super().__init__(msg)


class AmbiguousDimensionError(InstantonError):
    """The complex dimension at slope 0 with nu# = 0 is only known up to {r0, r0+2}."""

    exit_code = 2


class ContradictionError(InstantonError):
    exit_code = 3


class InfeasibleGeometryError(ContradictionError):
    pass


class KnotDBParseError(InstantonError, ValueError):
    pass


class KnotDBValidationError(ContradictionError):
    def __init__(self, knot: str, violations: list[str]):
        self.knot = knot
        self.violations = list(violations)
        super().__init__(f"{knot}: " + "; ".join(self.violations))


class PropagationError(ContradictionError):
    def __init__(self, message: str, witness: tuple = ()):
        self.witness = tuple(witness)
        super().__init__(message)
