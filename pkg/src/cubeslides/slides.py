"""Edge slides on spanning trees of Q_n.

An edge ``e`` of a tree ``T`` is *i-slidable* (``i != e.dir``) when
``T - e + sigma_i(e)`` is again a spanning tree. Slidability is always
decided by validating that edge set directly; the structural results
(unique slidable edge on a path, slide counts, orientation reversal) are
checked against it in the test suite rather than used to compute it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from . import hypercube as hc
from .errors import DependentSlides, InvalidDirection, InvalidEdge, NotSlidable
from .hypercube import CubeEdge
from .trees import (
    SpanningTree,
    find_cycle,
    is_spanning_tree,
    is_upright,
    orientation,
)

UP = "up"
DOWN = "down"


class SlideMove(NamedTuple):
    edge: CubeEdge
    slide_dir: int
    vertical: str

    @property
    def target(self) -> CubeEdge:
        return hc.sigma_edge(self.edge, self.slide_dir)

    def __str__(self) -> str:
        return f"slide {self.edge} {self.vertical} in direction {self.slide_dir}"


def vertical_of(e: CubeEdge, i: int) -> str:
    """``up`` if sliding ``e`` across direction ``i`` leaves the lower face."""
    return DOWN if hc.in_upper_face(e.lower, i) else UP


def _check(tree: SpanningTree, e: CubeEdge, i: int) -> None:
    hc.check_direction(i, tree.n)
    if e not in tree.edges:
        raise InvalidEdge(f"{e} is not an edge of the tree")
    if i == e.dir:
        raise InvalidDirection(f"cannot slide a {i}-edge in direction {i}")


def is_slidable(tree: SpanningTree, e: CubeEdge, i: int) -> bool:
    _check(tree, e, i)
    f = hc.sigma_edge(e, i)
    if f in tree.edges:
        return False
    return is_spanning_tree(tree.n, [g for g in tree.sorted_edges if g != e] + [f])


def slide(tree: SpanningTree, e: CubeEdge, i: int) -> SpanningTree:
    """Replace ``e`` by ``sigma_i(e)``; raises NotSlidable if that breaks the tree."""
    _check(tree, e, i)
    f = hc.sigma_edge(e, i)
    if f in tree.edges:
        raise NotSlidable(f"{f} is already in the tree")
    rest = [g for g in tree.sorted_edges if g != e]
    cycle = find_cycle(tree.n, rest + [f])
    if cycle is not None:
        raise NotSlidable(f"sliding {e} in direction {i} creates a cycle and disconnects the tree", cycle)
    return SpanningTree(tree.n, frozenset(rest + [f]))


def slidable_edges(tree: SpanningTree, i: int) -> list[SlideMove]:
    """All i-slidable edges of the tree, in canonical edge order."""
    hc.check_direction(i, tree.n)
    return [
        SlideMove(e, i, vertical_of(e, i))
        for e in tree.sorted_edges
        if e.dir != i and is_slidable(tree, e, i)
    ]


def all_moves(tree: SpanningTree) -> list[SlideMove]:
    moves = []
    for i in range(1, tree.n + 1):
        moves.extend(slidable_edges(tree, i))
    return moves


def apply_move(tree: SpanningTree, move: SlideMove) -> SpanningTree:
    return slide(tree, move.edge, move.slide_dir)


# ---------------------------------------------------------------------------
# Orientation reversal
# ---------------------------------------------------------------------------

def flipped_edges(tree: SpanningTree, e: CubeEdge, i: int) -> set[CubeEdge]:
    """Edges whose orientation sign changes when ``e`` is slid in direction ``i``.

    The slid edge is compared with its image; a change there is reported by
    including ``e`` in the result.
    """
    after = slide(tree, e, i)
    mu0 = orientation(tree)
    mu1 = orientation(after)
    out = {g for g, m in mu0.items() if g != e and mu1[g] != m}
    if mu1[hc.sigma_edge(e, i)] != mu0[e]:
        out.add(e)
    return out


def cycle_root_split(tree: SpanningTree, e: CubeEdge, i: int) -> tuple[list[int], set[int]]:
    """The cycle of ``T + sigma_i(e)`` and the vertex set of the non-root part of ``T - e``."""
    f = hc.sigma_edge(e, i)
    cycle = tree.path(f.lower, f.upper) + [f.lower]
    # the endpoint of e farther from the root heads the non-root component
    child = e.lower if tree.parent[e.lower] == e.upper else e.upper
    far = set()
    stack = [child]
    while stack:
        x = stack.pop()
        far.add(x)
        for y in tree.adjacency[x]:
            if y not in far and not (x == child and tree.parent[child] == y):
                stack.append(y)
    return cycle, far


def predicted_reversals(tree: SpanningTree, e: CubeEdge, i: int) -> set[CubeEdge]:
    """Tree edges lying on the slide cycle with both ends in the non-root part."""
    cycle, far = cycle_root_split(tree, e, i)
    out = set()
    for a, b in zip(cycle, cycle[1:]):
        g = hc.edge_between(a, b)
        if g in tree.edges and g != e and a in far and b in far:
            out.add(g)
    return out


def reversed_edge(tree: SpanningTree, e: CubeEdge, i: int) -> CubeEdge:
    """The unique i-edge whose orientation is reversed by sliding ``e`` in direction ``i``."""
    flips = flipped_edges(tree, e, i)
    if e in flips:
        raise AssertionError(f"slid edge {e} changed orientation")
    i_flips = [g for g in flips if g.dir == i]
    if len(i_flips) != 1:
        raise ValueError(f"slide of {e} in direction {i} reverses {len(i_flips)} {i}-edges")
    return i_flips[0]


# ---------------------------------------------------------------------------
# Paths between parallel edges
# ---------------------------------------------------------------------------

def edge_path(tree: SpanningTree, e1: CubeEdge, e2: CubeEdge) -> list[int]:
    """Vertex path joining edges ``e1`` and ``e2`` without traversing either."""
    path = tree.path(e1.lower, e2.lower)
    if len(path) > 1 and path[1] == e1.upper:
        path = path[1:]
    if len(path) > 1 and path[-2] == e2.upper:
        path = path[:-1]
    return path


def path_edges(path: list[int]) -> list[CubeEdge]:
    return [hc.edge_between(a, b) for a, b in zip(path, path[1:])]


def is_minimal_pair(tree: SpanningTree, e1: CubeEdge, e2: CubeEdge, i: int) -> bool:
    """True if no interior vertex of the joining path carries a tree i-edge."""
    path = edge_path(tree, e1, e2)
    return not any(tree.has_edge_at(v, i) for v in path[1:-1])


def minimal_pairs(tree: SpanningTree, i: int) -> list[tuple[CubeEdge, CubeEdge]]:
    ies = tree.edges_in(i)
    return [(a, b) for a, b in itertools.combinations(ies, 2) if is_minimal_pair(tree, a, b, i)]


def slidable_on_path(tree: SpanningTree, path: list[int], i: int) -> list[CubeEdge]:
    return [g for g in path_edges(path) if g.dir != i and is_slidable(tree, g, i)]


def find_slidable_on_path(tree: SpanningTree, e1: CubeEdge, e2: CubeEdge, i: int) -> CubeEdge:
    """Locate an i-slidable edge on the tree path from ``e1`` to ``e2``.

    The path is first cut at the first interior vertex carrying another
    i-edge. For each path vertex ``v`` we record where the tree path from
    its reflection ``sigma_i(v)`` first meets the path; an edge whose two
    ends record points on opposite sides of it is slidable, and such an
    edge always exists.
    """
    for e in (e1, e2):
        if e.dir != i or e not in tree.edges:
            raise InvalidEdge(f"{e} is not an {i}-edge of the tree")
    if e1 == e2:
        raise InvalidEdge("the two i-edges must be distinct")
    path = edge_path(tree, e1, e2)
    for j in range(1, len(path) - 1):
        if tree.has_edge_at(path[j], i):
            path = path[: j + 1]
            break
    pos = {v: j for j, v in enumerate(path)}
    anchor = []
    for v in path:
        for w in tree.path(hc.sigma(v, i), v):
            if w in pos:
                anchor.append(pos[w])
                break
    for ell in range(len(path) - 1):
        a, b = anchor[ell], anchor[ell + 1]
        if (a <= ell and b >= ell + 1) or (b <= ell and a >= ell + 1):
            f = hc.edge_between(path[ell], path[ell + 1])
            if not is_slidable(tree, f, i):
                raise AssertionError(f"path edge {f} passed the anchor test but is not {i}-slidable")
            return f
    raise AssertionError(f"no {i}-slidable edge between {e1} and {e2}")


# ---------------------------------------------------------------------------
# Slide classes and retractions
# ---------------------------------------------------------------------------

def apply_epsilon(tree: SpanningTree, edges: list[CubeEdge], i: int, eps) -> frozenset[CubeEdge]:
    moved = {e for e, bit in zip(edges, eps) if bit}
    return (tree.edges - moved) | {hc.sigma_edge(e, i) for e in moved}


@dataclass
class SlideClass:
    base: SpanningTree
    dir: int
    slidable: tuple[CubeEdge, ...]
    members: dict[tuple[int, ...], SpanningTree] = field(repr=False)

    def member(self, eps) -> SpanningTree:
        return self.members[tuple(eps)]

    def __len__(self) -> int:
        return len(self.members)

    def trees(self) -> set[SpanningTree]:
        return set(self.members.values())


def slide_class(tree: SpanningTree, i: int) -> SlideClass:
    """All trees reachable by sliding any subset of the i-slidable edges at once.

    Raises DependentSlides naming the first failing epsilon (by weight, then
    lexicographically) when some subset does not yield a tree.
    """
    slid = tuple(m.edge for m in slidable_edges(tree, i))
    k = len(slid)
    vectors = sorted(itertools.product((0, 1), repeat=k), key=lambda v: (sum(v), v))
    members = {}
    for eps in vectors:
        edge_set = apply_epsilon(tree, list(slid), i, eps)
        ordered = sorted(edge_set, key=hc.edge_sort_key)
        cycle = find_cycle(tree.n, ordered)
        if cycle is not None:
            raise DependentSlides(tree, i, eps, cycle)
        members[eps] = SpanningTree(tree.n, edge_set)
    return SlideClass(tree, i, slid, members)


def downward_moves(tree: SpanningTree, i: int) -> list[SlideMove]:
    return [m for m in slidable_edges(tree, i) if m.vertical == DOWN]


def _require_q3(tree: SpanningTree) -> None:
    if tree.n != 3:
        raise ValueError("the retractions are defined for Q_3 only")


def retract_i(tree: SpanningTree, i: int) -> SpanningTree:
    """Member of the i-slide class with every slidable edge in the lower i-face."""
    _require_q3(tree)
    cls = slide_class(tree, i)
    eps = tuple(1 if hc.in_upper_face(e.lower, i) else 0 for e in cls.slidable)
    return cls.member(eps)


def retract(tree: SpanningTree) -> SpanningTree:
    """All downward slides in direction 3, then 2, then 1."""
    _require_q3(tree)
    for i in (3, 2, 1):
        tree = retract_i(tree, i)
    return tree


# ---------------------------------------------------------------------------
# Greedy downward normalisation (any n)
# ---------------------------------------------------------------------------

def cardinality_sum(tree: SpanningTree) -> int:
    """Sum over edges of the endpoint sizes; each downward slide lowers it by 2."""
    return sum(bin(e.lower).count("1") * 2 + 1 for e in tree.edges)


def _first_downward(tree: SpanningTree) -> SlideMove | None:
    for i in range(1, tree.n + 1):
        bit = 1 << (i - 1)
        for e in tree.sorted_edges:
            if e.dir != i and e.lower & bit and is_slidable(tree, e, i):
                return SlideMove(e, i, DOWN)
    return None


def downward_slide_sequence(tree: SpanningTree) -> tuple[SpanningTree, list[SlideMove]]:
    moves = []
    while (move := _first_downward(tree)) is not None:
        tree = apply_move(tree, move)
        moves.append(move)
    return tree, moves


def normalize_downward(tree: SpanningTree) -> SpanningTree:
    """Apply the first available downward slide until none is left.

    Slides are tried in order of direction, then canonical edge index. The
    result is upright.
    """
    result, _ = downward_slide_sequence(tree)
    if not is_upright(result):
        raise AssertionError("no downward slide left but tree is not upright")
    return result

