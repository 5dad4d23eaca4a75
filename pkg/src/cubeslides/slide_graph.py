"""The edge-slide graph of Q_3 and its connected components."""

from __future__ import annotations

import csv
import io
import itertools
from collections import deque
from dataclasses import dataclass, field

from . import hypercube as hc
from .slides import SlideMove, all_moves, apply_move
from .trees import SpanningTree, direction_monomial, enumerate_spanning_trees, is_upright


@dataclass
class SlideGraph:
    n: int
    trees: dict[int, SpanningTree]
    adjacency: dict[int, list[tuple[int, SlideMove]]]

    @property
    def nodes(self) -> list[int]:
        return sorted(self.trees)

    def edges(self) -> list[tuple[int, int, SlideMove]]:
        """Each undirected graph edge once, from its smaller mask."""
        out = []
        for a in self.nodes:
            for b, move in self.adjacency[a]:
                if a < b:
                    out.append((a, b, move))
        return out

    def neighbours(self, mask: int) -> set[int]:
        return {b for b, _ in self.adjacency[mask]}


@dataclass
class ComponentRecord:
    members: list[int]
    signature: tuple[int, ...]
    q4_isomorphic: bool = False
    upright_count: int = 0
    face_signature: tuple[int, ...] | None = field(default=None)

    @property
    def id(self) -> int:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


def build(n: int = 3) -> SlideGraph:
    if n != 3:
        raise ValueError("the edge-slide graph is only built for Q_3")
    trees = {t.mask: t for t in enumerate_spanning_trees(n)}
    adjacency = {}
    for mask, tree in trees.items():
        adjacency[mask] = [(apply_move(tree, m).mask, m) for m in all_moves(tree)]
    return SlideGraph(n, trees, adjacency)


def lower_face_signature(tree: SpanningTree) -> tuple[int, ...] | None:
    """For a tree with a single edge in some direction d, the edge counts of
    its part in the lower d-face, by the remaining directions."""
    sig = direction_monomial(tree)
    if 1 not in sig:
        return None
    d = sig.index(1) + 1
    bit = 1 << (d - 1)
    counts = [0] * tree.n
    for e in tree.edges:
        if e.dir != d and not e.lower & bit:
            counts[e.dir - 1] += 1
    return tuple(c for j, c in enumerate(counts) if j != d - 1)


def components(g: SlideGraph) -> list[ComponentRecord]:
    """Connected components by breadth-first search, ordered by smallest member."""
    seen: set[int] = set()
    out = []
    for start in g.nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, _ in g.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comp.sort()
        first = g.trees[comp[0]]
        rec = ComponentRecord(
            members=comp,
            signature=direction_monomial(first),
            upright_count=sum(is_upright(g.trees[m]) for m in comp),
            face_signature=lower_face_signature(first),
        )
        if rec.size == 16:
            rec.q4_isomorphic = certify_q4_component(g, rec)
        out.append(rec)
    return out


def cube_map(tree: SpanningTree, moves: list[SlideMove]) -> dict[tuple[int, ...], SpanningTree]:
    """Apply each subset of ``moves`` to ``tree`` by tracking the moved edges.

    Two moves of the same edge in different directions compose. Raises if
    any subset fails to give a spanning tree.
    """
    out = {}
    for eps in itertools.product((0, 1), repeat=len(moves)):
        pos = {e: e for e in tree.edges}
        for bit, m in zip(eps, moves):
            if bit:
                pos[m.edge] = hc.sigma_edge(pos[m.edge], m.slide_dir)
        out[eps] = SpanningTree(tree.n, frozenset(pos.values()))
    return out


class CertificationError(AssertionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def certify_q4_component(g: SlideGraph, comp: ComponentRecord) -> bool:
    """Check that a 16-tree component is a 4-cube spanned by one tree's slides.

    Raises CertificationError with a counter-witness if the epsilon map is
    not a bijection onto the component, or adjacency does not match Hamming
    distance one.
    """
    if comp.size != 16:
        raise ValueError(f"component {comp.id} has {comp.size} trees, not 16")
    base = g.trees[comp.members[0]]
    moves = [m for _, m in g.adjacency[base.mask]]
    if len(moves) != 4:
        raise CertificationError(f"tree {base.mask} has {len(moves)} slides", base.mask)
    try:
        cube = cube_map(base, moves)
    except ValueError as exc:
        raise CertificationError(f"epsilon map is not well defined: {exc}") from exc
    image = {eps: t.mask for eps, t in cube.items()}
    if len(set(image.values())) != 16:
        raise CertificationError("epsilon map is not injective")
    members = set(comp.members)
    if set(image.values()) != members:
        raise CertificationError("epsilon map does not cover the component", set(image.values()) ^ members)
    for a, b in itertools.combinations(image, 2):
        hamming = sum(x != y for x, y in zip(a, b))
        adjacent = image[b] in g.neighbours(image[a])
        if adjacent != (hamming == 1):
            raise CertificationError("adjacency differs from the 4-cube", (a, b))
    internal = sum(1 for a, b, _ in g.edges() if a in members and b in members)
    if internal != 32:
        raise CertificationError(f"component has {internal} internal edges, expected 32")
    return True


def _label(mask: int, sig: tuple[int, ...]) -> str:
    return f"T{mask} ({','.join(map(str, sig))})"


def export_dot(g: SlideGraph, comps: list[ComponentRecord] | None = None, name: str = "E3") -> str:
    """Undirected DOT text for the whole graph, or for the given components only."""
    if comps is None:
        keep = set(g.nodes)
    else:
        keep = {m for c in comps for m in c.members}
    lines = [f"graph {name} {{"]
    for m in g.nodes:
        if m in keep:
            sig = direction_monomial(g.trees[m])
            lines.append(f'  T{m} [label="{_label(m, sig)}"];')
    for a, b, move in g.edges():
        if a in keep and b in keep:
            lines.append(f'  T{a} -- T{b} [label="{move.slide_dir}{move.vertical[0]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def census_csv(comps: list[ComponentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["signature", "component_id", "size", "q4_certified", "upright_count"])
    for c in sorted(comps, key=lambda c: (c.signature, c.id)):
        w.writerow(["-".join(map(str, c.signature)), c.id, c.size, str(c.q4_isomorphic).lower(), c.upright_count])
    return buf.getvalue()

