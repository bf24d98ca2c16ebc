"""Exception types raised across the package."""

from __future__ import annotations


class GraphParseError(ValueError):
    """Malformed graph6 or edge-list input.

    ``offset`` is a byte offset for graph6 and a 1-based line number for edge lists.
    """

    def __init__(self, message: str, offset: int | None = None, kind: str = "malformed"):
        self.offset = offset
        self.kind = kind
        where = "" if offset is None else f" (at {offset})"
        super().__init__(f"{message}{where}")


class InvalidGraphSpec(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    def __init__(self, what: str = "graph must be connected"):
        super().__init__(what)


class BudgetExceeded(RuntimeError):
    """Refusal to run a computation whose size exceeds a configured cap."""

    def __init__(self, what: str, required: int, limit: int):
        self.required = required
        self.limit = limit
        super().__init__(f"{what}: requires {required}, limit is {limit}")


class NotColorExactError(ValueError):
    """A relation was expected to be a union of basis colors and is not."""


class CoherenceError(RuntimeError):
    """A partition that must be coherent failed an axiom check."""


class CertificationError(RuntimeError):
    """The coordinatization of a factorization did not verify."""


class NotEquivalentError(ValueError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"inputs {i} and {j} are not WL-equivalent")
