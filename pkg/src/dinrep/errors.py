"""Exception hierarchy.

Every error raised because of bad input derives from :class:`InputError`;
the CLI maps those to exit code 2.  Oracle guards raise
:class:`GuardExceededError` (exit code 3).
"""

from __future__ import annotations


class DinrepError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DinrepError, ValueError):
    """The input violates a precondition of the requested operation."""


class NotADagError(InputError):
    def __init__(self, message: str = "not a DAG") -> None:
        super().__init__(message)


class NoHamiltonianPathError(InputError):
    def __init__(self, message: str = "DAG has no Hamiltonian path") -> None:
        super().__init__(message)


class NotTriangleFreeError(InputError):
    def __init__(self, triangle: tuple[int, int, int]) -> None:
        super().__init__(f"graph contains the triangle {list(triangle)}")
        self.triangle = triangle


class NotDiamondFreeError(InputError):
    def __init__(self, message: str = "graph is not diamond-free") -> None:
        super().__init__(message)


class NotBipartiteError(InputError):
    def __init__(self, message: str = "graph is not bipartite") -> None:
        super().__init__(message)


class InadmissibleDigraphError(InputError):
    """Some strongly connected component is not symmetric."""

    def __init__(self, arc: tuple[int, int]) -> None:
        u, v = arc
        super().__init__(
            f"arc ({u}, {v}) lies inside a strongly connected component "
            f"but ({v}, {u}) is missing"
        )
        self.arc = arc


class DimensionMismatchError(InputError):
    pass


class PreconditionError(InputError):
    pass


class InstanceFormatError(InputError):
    """Malformed instance or representation file.

    ``locus`` names the offending position: ``"line 3, column 7"`` for
    syntax errors, a field path such as ``"arcs[4][1]"`` otherwise.
    """

    def __init__(self, locus: str, message: str) -> None:
        super().__init__(f"{locus}: {message}")
        self.locus = locus


class GuardExceededError(DinrepError):
    """An exhaustive search was asked to run outside its size guard."""


class SearchCancelled(DinrepError):
    """A cooperative cancellation token was set during a search."""
