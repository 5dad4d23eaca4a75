"""Exception types raised across the package."""

from __future__ import annotations


class CubeError(ValueError):
    """Base class for invalid inputs to hypercube and tree operations."""


class InvalidDirection(CubeError):
    pass


class InvalidEdge(CubeError):
    pass


class NotATree(CubeError):
    """An edge set failed spanning-tree validation.

    ``reason`` is one of ``"invalid-edge"``, ``"count"``, ``"cycle"``,
    ``"disconnected"``.
    """

    def __init__(self, reason: str, message: str, cycle=None):
        super().__init__(message)
        self.reason = reason
        self.cycle = cycle


class NotSlidable(CubeError):
    """A requested slide does not produce a spanning tree.

    ``cycle`` holds the vertex cycle created in ``T - e + sigma_i(e)``
    when one exists.
    """

    def __init__(self, message: str, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class DependentSlides(Exception):
    """Simultaneous slides of individually slidable edges broke the tree."""

    def __init__(self, tree, direction: int, epsilon: tuple[int, ...], cycle: list[int]):
        super().__init__(
            f"slide class in direction {direction} is not independent: "
            f"epsilon={''.join(map(str, epsilon))} gives a cycle"
        )
        self.tree = tree
        self.direction = direction
        self.epsilon = epsilon
        self.cycle = cycle
