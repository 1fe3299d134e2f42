"""Exception hierarchy shared by all macc modules.

Everything raised for a domain reason derives from MaccError so the CLI can
map it to exit code 1; malformed input files derive from ParseError and map
to exit code 2 together with argparse usage errors.
"""


class MaccError(Exception):
    """Base class for domain-level failures."""


class ParseError(MaccError):
    """Input file or literal could not be parsed."""


class BadSubset(MaccError):
    """Subset is not strictly increasing or leaves the ground set."""


class NonUniformStars(MaccError):
    """Rows of the array carry differing numbers of stars."""


class DimensionMismatch(MaccError):
    """Array shapes or derived dimensions are inconsistent."""


class C4Violation(MaccError):
    """Array does not have the uniform per-row star count C4 requires."""


class ConditionViolation(MaccError):
    """A named regularity condition failed while assembling a scheme."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class RowCountMismatch(MaccError):
    """Two row-indexed structures disagree on the number of rows."""


class C3ViolationInQ(MaccError):
    """A delivery array failed the crossing condition after null filling."""


class DemandOutOfRange(MaccError):
    """Demand vector has the wrong length or an entry outside [1, N]."""


class UndecodablePacket(MaccError):
    """A user could not recover a packet from its view and the log."""


class FieldTooSmall(MaccError):
    """The finite field cannot host the requested coding matrix."""


class NotApplicable(MaccError):
    """The compression precondition (every lambda_h > 0) does not hold."""


class SingularSystem(MaccError):
    """A linear system over the field has no unique solution."""


class OutOfRange(MaccError):
    """A parameter violates its stated constraint."""


class EmptyInput(MaccError):
    """An operation that needs at least one element got none."""
