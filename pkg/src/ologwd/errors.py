"""Exception hierarchy shared across the package."""

from __future__ import annotations

from typing import Any, Sequence


class OlogWdError(Exception):
    """Base class for every domain error raised by :mod:`ologwd`."""


class SchemaError(OlogWdError, ValueError):
    """A file or payload does not match its declared format."""


# graph-core


class CycleError(OlogWdError, ValueError):
    """The graph has a loop or an oriented cycle.

    ``cycle`` is a closed vertex walk, first vertex repeated at the end,
    e.g. ``("A", "B", "A")`` or ``("v", "v")`` for a loop.
    """

    def __init__(self, cycle: Sequence[Any]):
        self.cycle = tuple(cycle)
        super().__init__("graph is not acyclic; cycle: " + " -> ".join(map(str, self.cycle)))


class NotPartialOrderError(OlogWdError, ValueError):
    def __init__(self, reason: str, witness: Any = None):
        self.reason = reason
        self.witness = witness
        msg = f"relation is not a partial order ({reason})"
        if witness is not None:
            msg += f": {witness!r}"
        super().__init__(msg)


class NotSkeletonError(OlogWdError, ValueError):
    pass


# olog


class UnknownTypeError(OlogWdError, KeyError):
    def __str__(self) -> str:
        return f"unknown olog type: {self.args[0]!r}"


class UnknownAspectError(OlogWdError, KeyError):
    def __str__(self) -> str:
        return f"unknown olog aspect: {self.args[0]!r}"


class DuplicateIdError(OlogWdError, ValueError):
    pass


class CospanMismatchError(OlogWdError, ValueError):
    pass


class NonpositiveCostError(OlogWdError, ValueError):
    pass


# wiring diagrams


class NonNumericCodomainError(OlogWdError, TypeError):
    pass


class UnknownRelationError(OlogWdError, KeyError):
    def __str__(self) -> str:
        return f"unknown relation: {self.args[0]!r}"


class EntityNotInSetError(OlogWdError, ValueError):
    pass


class UnknownSensorError(OlogWdError, KeyError):
    def __str__(self) -> str:
        return f"unknown sensor: {self.args[0]!r}"


# wd-category


class VertexSetMismatchError(OlogWdError, ValueError):
    pass


# edit distance


class InvalidOpError(OlogWdError, ValueError):
    """An elementary edit operation cannot be applied.

    ``reason`` is a short machine-readable tag such as
    ``"would-empty-state-vector"``; ``index`` is set by path replay to the
    position of the failing operation.
    """

    def __init__(self, reason: str, detail: str = "", index: int | None = None):
        self.reason = reason
        self.detail = detail
        self.index = index
        super().__init__(self._message())

    def _message(self) -> str:
        msg = self.reason
        if self.detail:
            msg += f": {self.detail}"
        if self.index is not None:
            msg = f"op #{self.index}: {msg}"
        return msg

    def at(self, index: int) -> "InvalidOpError":
        return InvalidOpError(self.reason, self.detail, index)


class PathEndpointMismatchError(OlogWdError, ValueError):
    pass


class BudgetExceededError(OlogWdError, RuntimeError):
    """Exact search hit its cost budget before reaching the target.

    ``best_bound`` is the cheapest known upper bound on the distance
    (``math.inf`` if none was found).
    """

    def __init__(self, budget: float, best_bound: float):
        self.budget = budget
        self.best_bound = best_bound
        super().__init__(f"no edit path within budget {budget}; best known upper bound {best_bound}")
