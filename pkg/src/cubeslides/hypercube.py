"""Static structure of the hypercube Q_n.

Vertices are subsets of {1..n} stored as bitmasks (bit ``i-1`` set iff
``i`` is in the subset). An edge is stored by its lower endpoint (the one
not containing the edge direction) and its 1-based direction.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .errors import InvalidDirection, InvalidEdge


class CubeEdge(NamedTuple):
    lower: int
    dir: int

    @property
    def upper(self) -> int:
        return self.lower | (1 << (self.dir - 1))

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.lower, self.upper

    def other(self, v: int) -> int:
        if v == self.lower:
            return self.upper
        if v == self.upper:
            return self.lower
        raise InvalidEdge(f"{v} is not an endpoint of {self}")

    def __str__(self) -> str:
        return f"({fmt_subset(self.lower)},{fmt_subset(self.upper)})"


def check_direction(i: int, n: int | None = None) -> None:
    if not isinstance(i, int) or i < 1 or (n is not None and i > n):
        raise InvalidDirection(f"direction {i!r} out of range for n={n}")


def check_vertex(v: int, n: int) -> None:
    if not isinstance(v, int) or v < 0 or v >= 1 << n:
        raise InvalidEdge(f"vertex {v!r} out of range for n={n}")


def check_edge(e: CubeEdge, n: int) -> None:
    check_direction(e.dir, n)
    check_vertex(e.lower, n)
    if e.lower >> (e.dir - 1) & 1:
        raise InvalidEdge(f"lower endpoint {e.lower} contains direction {e.dir}")


def edge_between(u: int, v: int) -> CubeEdge:
    """The cube edge joining two adjacent vertices."""
    diff = u ^ v
    if diff == 0 or diff & (diff - 1):
        raise InvalidEdge(f"{u} and {v} are not adjacent")
    return CubeEdge(u & v, diff.bit_length())


def sigma(v: int, i: int, n: int | None = None) -> int:
    """Reflect a vertex across direction ``i`` (symmetric difference with {i})."""
    check_direction(i, n)
    if n is not None:
        check_vertex(v, n)
    return v ^ (1 << (i - 1))


def sigma_edge(e: CubeEdge, i: int) -> CubeEdge:
    """Reflect both endpoints of ``e`` across direction ``i != e.dir``."""
    check_direction(i)
    if i == e.dir:
        raise InvalidDirection(f"cannot reflect a {i}-edge across direction {i}")
    return CubeEdge(e.lower ^ (1 << (i - 1)), e.dir)


def in_upper_face(v: int, i: int) -> bool:
    return bool(v >> (i - 1) & 1)


def num_vertices(n: int) -> int:
    return 1 << n


def num_edges(n: int) -> int:
    return n << (n - 1) if n > 0 else 0


def vertices(n: int) -> range:
    return range(1 << n)


def neighbours(v: int, n: int) -> Iterator[int]:
    for d in range(n):
        yield v ^ (1 << d)


def edge_index(e: CubeEdge, n: int) -> int:
    """Rank of ``e`` in the canonical order (direction, then lower bitmask)."""
    check_edge(e, n)
    d = e.dir - 1
    low = e.lower & ((1 << d) - 1)
    high = e.lower >> (d + 1)
    return (d << (n - 1)) | low | (high << d)


def index_edge(k: int, n: int) -> CubeEdge:
    if not isinstance(k, int) or k < 0 or k >= num_edges(n):
        raise InvalidEdge(f"edge index {k!r} out of range for n={n}")
    d, rank = divmod(k, 1 << (n - 1))
    low = rank & ((1 << d) - 1)
    high = rank >> d
    return CubeEdge(low | (high << (d + 1)), d + 1)


def edges(n: int) -> list[CubeEdge]:
    """All edges of Q_n in canonical order."""
    return [index_edge(k, n) for k in range(num_edges(n))]


def edge_sort_key(e: CubeEdge) -> tuple[int, int]:
    return e.dir, e.lower


def subset(v: int) -> list[int]:
    return [i + 1 for i in range(v.bit_length()) if v >> i & 1]


def from_subset(elements) -> int:
    v = 0
    for i in elements:
        v |= 1 << (i - 1)
    return v


def fmt_subset(v: int) -> str:
    return "{" + ",".join(map(str, subset(v))) + "}"
