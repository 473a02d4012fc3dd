"""Exception hierarchy shared across the package.

Every error raised on purpose derives from AtxError so callers (and the CLI)
can distinguish usage problems from genuine bugs.  ContractViolation is
special: it signals that a theorem-backed expectation failed, which means an
implementation bug, never bad input.
"""


class AtxError(Exception):
    """Base class for all package errors."""


class InvalidEdge(AtxError):
    """Edge is a loop or references a vertex outside [0, n)."""


class DuplicateEdge(AtxError):
    """The same unordered pair appears twice in an edge list."""


class InvalidParameter(AtxError):
    """A numeric or enum argument is outside its allowed range."""


class InvalidInput(AtxError):
    """A structural precondition on the input graph or vertices fails."""


class DuplicateVertex(AtxError):
    """A vertex occurs twice where distinct vertices are required."""


class ParseError(AtxError):
    """Malformed textual graph input.

    Carries the byte offset of the first offending byte.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class TooLarge(AtxError):
    """Input exceeds a guard bound of an exponential-time operation."""


class WrongClass(AtxError):
    """The graph is outside the class a constructor requires."""


class PatternMismatch(AtxError):
    """An orientation does not match the required local arc pattern."""


class NotACutVertex(AtxError):
    """Gluing requires the two bases to share exactly one vertex."""


class AlreadyDirected(AtxError):
    """An edge of a partial orientation already carries a direction."""


class UnanchoredComponent(AtxError):
    """A component consists entirely of contractible 2-vertices."""


class InvalidBackMap(AtxError):
    """A contracted edge instance disagrees with its recorded path."""


class NoColoring(AtxError):
    """The operation needs a proper 3-coloring but none exists."""


class ContractViolation(AtxError):
    """A theorem-backed invariant failed; indicates an implementation bug."""
